#include "qq/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace qq {
namespace {

using nlohmann::json;

json pair_of(const Amplitude& a) {
  return json::array({a.real(), a.imag()});
}

json document_tree(const QueryAlgorithm& alg, const std::string& notes) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = alg.num_vars;
  doc["m"] = alg.dim();
  json initial = json::array();
  for (const Amplitude& a : alg.initial.amps) initial.push_back(pair_of(a));
  doc["initial"] = std::move(initial);
  json steps = json::array();
  for (const Step& step : alg.steps) {
    json item;
    if (const auto* u = std::get_if<UnitaryMatrix>(&step)) {
      item["kind"] = "unitary";
      json entries = json::array();
      for (const Amplitude& a : u->entries()) entries.push_back(pair_of(a));
      item["entries"] = std::move(entries);
    } else {
      item["kind"] = "query";
      json vars = json::array();
      for (const std::optional<int>& v : std::get<QuerySpec>(step).vars) {
        if (v) {
          vars.push_back(*v);
        } else {
          vars.push_back(nullptr);
        }
      }
      item["vars"] = std::move(vars);
    }
    steps.push_back(std::move(item));
  }
  doc["steps"] = std::move(steps);
  json measurement = json::array();
  for (const std::uint8_t v : alg.measurement.values) {
    measurement.push_back(static_cast<int>(v));
  }
  doc["measurement"] = std::move(measurement);
  doc["metadata"] = json{{"name", alg.name}, {"notes", notes}};
  return doc;
}

// nlohmann's dump() prints shortest-round-trip reals; the canonical form
// wants a fixed 17 significant digits, so emission is done by hand.  Key
// order is already sorted because json keeps objects in a std::map.
void emit(const json& j, std::string& out) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += json(it.key()).dump();
        out += ':';
        emit(it.value(), out);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        emit(j[i], out);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (v == 0.0) v = 0.0;  // drop the sign of negative zero
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    default:
      out += j.dump();
      break;
  }
}

double number_at(const json& pair, std::size_t idx) {
  const json& v = pair.at(idx);
  if (!v.is_number()) {
    throw DocumentError("amplitude entries must be [re, im] number pairs");
  }
  return v.get<double>();
}

Amplitude amplitude_of(const json& pair) {
  if (!pair.is_array() || pair.size() != 2) {
    throw DocumentError("amplitude entries must be [re, im] number pairs");
  }
  return Amplitude{number_at(pair, 0), number_at(pair, 1)};
}

AlgorithmDocument parse_tree(const json& doc) {
  if (!doc.is_object()) {
    throw DocumentError("algorithm document must be a JSON object");
  }
  if (doc.at("schema_version").get<int>() != kSchemaVersion) {
    throw DocumentError("unsupported schema version");
  }
  AlgorithmDocument out;
  QueryAlgorithm& alg = out.algorithm;
  alg.num_vars = doc.at("n").get<int>();
  const std::size_t m = doc.at("m").get<std::size_t>();

  const json& initial = doc.at("initial");
  if (!initial.is_array() || initial.size() != m) {
    throw DocumentError("initial state must list m amplitudes");
  }
  for (const json& pair : initial) {
    alg.initial.amps.push_back(amplitude_of(pair));
  }

  const json& steps = doc.at("steps");
  if (!steps.is_array()) throw DocumentError("steps must be an array");
  for (const json& item : steps) {
    const std::string kind = item.at("kind").get<std::string>();
    if (kind == "unitary") {
      const json& entries = item.at("entries");
      if (!entries.is_array() || entries.size() != m * m) {
        throw DocumentError("a unitary step must list m*m entries");
      }
      std::vector<Amplitude> values;
      values.reserve(m * m);
      for (const json& pair : entries) values.push_back(amplitude_of(pair));
      alg.steps.emplace_back(UnitaryMatrix(m, std::move(values)));
    } else if (kind == "query") {
      const json& vars = item.at("vars");
      if (!vars.is_array() || vars.size() != m) {
        throw DocumentError("a query step must list m variable slots");
      }
      QuerySpec q;
      for (const json& v : vars) {
        if (v.is_null()) {
          q.vars.push_back(std::nullopt);
        } else if (v.is_number_integer()) {
          q.vars.push_back(v.get<int>());
        } else {
          throw DocumentError("query slots must be integers or null");
        }
      }
      alg.steps.emplace_back(std::move(q));
    } else {
      throw DocumentError("unknown step kind '" + kind + "'");
    }
  }

  const json& measurement = doc.at("measurement");
  if (!measurement.is_array() || measurement.size() != m) {
    throw DocumentError("measurement must assign a bit to each basis state");
  }
  for (const json& v : measurement) {
    if (!v.is_number_integer()) {
      throw DocumentError("measurement values must be 0 or 1");
    }
    alg.measurement.values.push_back(
        static_cast<std::uint8_t>(v.get<int>()));
  }

  const json& metadata = doc.at("metadata");
  alg.name = metadata.at("name").get<std::string>();
  if (metadata.contains("notes")) {
    out.notes = metadata.at("notes").get<std::string>();
  }
  return out;
}

}  // namespace

std::string to_document(const QueryAlgorithm& alg, const std::string& notes) {
  validate_structure(alg);
  std::string out;
  emit(document_tree(alg, notes), out);
  return out;
}

AlgorithmDocument from_document(const std::string& text) {
  try {
    AlgorithmDocument doc = parse_tree(json::parse(text));
    validate_structure(doc.algorithm);
    return doc;
  } catch (const DocumentError&) {
    throw;
  } catch (const json::exception& e) {
    throw DocumentError(std::string("malformed algorithm document: ") +
                        e.what());
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("invalid algorithm document: ") +
                        e.what());
  }
}

void save_algorithm(const QueryAlgorithm& alg, const std::string& path,
                    const std::string& notes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DocumentError("cannot write " + path);
  out << to_document(alg, notes) << '\n';
  if (!out) throw DocumentError("failed while writing " + path);
}

AlgorithmDocument load_algorithm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_document(buffer.str());
}

}  // namespace qq
