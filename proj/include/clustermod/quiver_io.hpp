#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "clustermod/catalog.hpp"
#include "clustermod/error.hpp"
#include "clustermod/exchange_matrix.hpp"
#include "clustermod/seed.hpp"

namespace clustermod {

using Json = nlohmann::json;

inline Json to_json(const ExchangeMatrix& m) {
  Json j;
  j["n"] = m.n();
  j["frozen"] = m.frozen();
  j["weights"] = m.weights();
  j["matrix"] = m.rows();
  return j;
}

namespace detail {

inline std::int64_t json_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw InputError("expected an integer at " + where);
  return v.get<std::int64_t>();
}

}  // namespace detail

// {"n": int, "frozen": [int], "weights": [int], "matrix": [[int]]}; frozen and weights optional.
inline ExchangeMatrix quiver_from_json(const Json& j) {
  using detail::json_int;
  if (!j.is_object()) throw InputError("quiver must be a JSON object");
  if (!j.contains("matrix")) throw InputError("quiver is missing \"matrix\"");
  const Json& mat = j["matrix"];
  if (!mat.is_array()) throw InputError("\"matrix\" must be an array of rows");
  const auto n = static_cast<std::int64_t>(mat.size());
  if (j.contains("n") && json_int(j["n"], "n") != n)
    throw InputError("\"n\" is " + std::to_string(json_int(j["n"], "n")) + " but matrix has " + std::to_string(n) + " rows");
  std::vector<std::vector<ExchangeMatrix::Entry>> rows;
  for (std::int64_t i = 0; i < n; ++i) {
    const Json& r = mat[static_cast<std::size_t>(i)];
    const std::string where = "matrix[" + std::to_string(i) + "]";
    if (!r.is_array() || static_cast<std::int64_t>(r.size()) != n)
      throw InputError(where + " must be an array of " + std::to_string(n) + " integers");
    std::vector<ExchangeMatrix::Entry> row;
    for (std::int64_t c = 0; c < n; ++c)
      row.push_back(json_int(r[static_cast<std::size_t>(c)], where + "[" + std::to_string(c) + "]"));
    rows.push_back(std::move(row));
  }
  std::vector<ExchangeMatrix::Entry> weights;
  if (j.contains("weights")) {
    const Json& w = j["weights"];
    if (!w.is_array() || static_cast<std::int64_t>(w.size()) != n)
      throw InputError("\"weights\" must be an array of " + std::to_string(n) + " integers");
    for (std::size_t i = 0; i < w.size(); ++i) weights.push_back(json_int(w[i], "weights[" + std::to_string(i) + "]"));
  }
  std::vector<int> frozen;
  if (j.contains("frozen")) {
    const Json& f = j["frozen"];
    if (!f.is_array()) throw InputError("\"frozen\" must be an array of vertex indices");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto v = json_int(f[i], "frozen[" + std::to_string(i) + "]");
      if (v < 0 || v >= n) throw InputError("frozen[" + std::to_string(i) + "] is out of range");
      frozen.push_back(static_cast<int>(v));
    }
  }
  try {
    return ExchangeMatrix(rows, weights, frozen);
  } catch (const InvalidMatrix& e) {
    throw InputError(std::string("invalid exchange matrix: ") + e.what());
  }
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
  }
}

inline ExchangeMatrix parse_quiver(const std::string& text) { return quiver_from_json(parse_json_text(text)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A path to a quiver JSON file, or a catalog name.
inline ExchangeMatrix load_quiver(const std::string& spec) {
  std::ifstream probe(spec);
  if (probe) {
    try {
      return parse_quiver(read_file(spec));
    } catch (const InputError& e) {
      throw InputError(spec + ": " + e.what());
    }
  }
  for (const auto& e : catalog())
    if (e.name == spec) return e.matrix;
  throw InputError("'" + spec + "' is neither a readable file nor a catalog name");
}

inline Json to_json(const MutationWord& w, int base = 0) { return w.to_string(base); }

inline Json seed_json(const Seed& s) {
  Json j = to_json(s.matrix);
  j["c_matrix"] = s.c;
  if (s.has_variables) {
    std::vector<std::string> a, x;
    for (int i = 0; i < s.n(); ++i) {
      a.push_back(s.a[static_cast<std::size_t>(i)].to_string("A"));
      x.push_back(s.x[static_cast<std::size_t>(i)].to_string("X"));
    }
    j["a_vars"] = a;
    j["x_vars"] = x;
  }
  return j;
}

}  // namespace clustermod
