#include "aquafill/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "aquafill/errors.hpp"

namespace aquafill {

nlohmann::ordered_json instance_to_json(const RequestSequence& sequence) {
  nlohmann::ordered_json j;
  j["n"] = sequence.n;
  j["arrivals"] = nlohmann::ordered_json::array();
  for (const Arrival& a : sequence.arrivals) {
    j["arrivals"].push_back({{"neighbors", a.neighbors}, {"q", format_rational(a.quantity)}});
  }
  return j;
}

RequestSequence instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("arrivals")) {
    throw ParseError("instance must be an object with \"n\" and \"arrivals\"");
  }
  RequestSequence out;
  if (!j["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  out.n = j["n"].get<int>();
  if (!j["arrivals"].is_array()) throw ParseError("\"arrivals\" must be an array");

  int t = 0;
  for (const auto& entry : j["arrivals"]) {
    ++t;
    if (!entry.is_object() || !entry.contains("neighbors") || !entry.contains("q")) {
      throw ParseError("arrival " + std::to_string(t) +
                       " must be an object with \"neighbors\" and \"q\"");
    }
    Arrival a;
    if (!entry["neighbors"].is_array()) {
      throw ParseError("arrival " + std::to_string(t) + ": \"neighbors\" must be an array");
    }
    for (const auto& nb : entry["neighbors"]) {
      if (!nb.is_number_integer()) {
        throw ParseError("arrival " + std::to_string(t) + ": neighbors must be integers");
      }
      a.neighbors.push_back(nb.get<int>());
    }
    // Neighborhoods are sets: normalize order and drop duplicates.
    std::sort(a.neighbors.begin(), a.neighbors.end());
    a.neighbors.erase(std::unique(a.neighbors.begin(), a.neighbors.end()), a.neighbors.end());

    const auto& q = entry["q"];
    if (q.is_string()) {
      a.quantity = parse_rational(q.get<std::string>());
    } else if (q.is_number_integer()) {
      a.quantity = Rat(q.get<long>());
    } else {
      throw ParseError("arrival " + std::to_string(t) +
                       ": \"q\" must be a rational string");
    }
    out.arrivals.push_back(std::move(a));
  }
  validate(out);
  return out;
}

RequestSequence parse_instance(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

std::string serialize_instance(const RequestSequence& sequence) {
  return instance_to_json(sequence).dump(2) + "\n";
}

RequestSequence load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_instance(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void save_instance(const RequestSequence& sequence, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file: " + path.string());
  out << serialize_instance(sequence);
}

}  // namespace aquafill
