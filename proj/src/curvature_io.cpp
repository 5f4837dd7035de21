#include "cwpos/curvature_io.hpp"

#include <fstream>
#include <sstream>

#include "cwpos/errors.hpp"

namespace cwpos {

using nlohmann::json;

namespace {

int get_int(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc.at(key).is_number_integer()) {
    throw ParseError(std::string("missing or non-integer field \"") + key + "\"");
  }
  return doc.at(key).get<int>();
}

double get_number(const json& doc, const char* key) {
  if (!doc.contains(key)) return 0.0;
  if (!doc.at(key).is_number()) throw ParseError(std::string("field \"") + key + "\" is not a number");
  return doc.at(key).get<double>();
}

json index_list(MultiIndex idx) { return idx.indices(); }

MultiIndex index_from(const json& doc) {
  if (!doc.is_array()) throw ParseError("multi-index must be an array");
  try {
    return MultiIndex(doc.get<std::vector<int>>());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad multi-index: ") + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad multi-index: ") + e.what());
  }
}

}  // namespace

json curvature_to_json(const CurvaturePoint& c) {
  json theta = json::array();
  for (int a = 0; a < c.rank(); ++a) {
    json row = json::array();
    for (int b = 0; b < c.rank(); ++b) {
      json entries = json::array();
      for (const auto& [key, v] : c.entry(a, b).terms()) {
        entries.push_back({{"j", key.hol.max_entry()}, {"k", key.antihol.max_entry()}, {"re", v.real()}, {"im", v.imag()}});
      }
      row.push_back({{"entries", entries}});
    }
    theta.push_back(row);
  }
  return {{"schema_version", kCurvatureSchemaVersion}, {"n", c.dim()}, {"r", c.rank()}, {"theta", theta}};
}

CurvaturePoint curvature_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("curvature document must be a JSON object");
  if (doc.contains("schema_version")) {
    if (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kCurvatureSchemaVersion) {
      throw ParseError("unsupported schema_version");
    }
  }
  const int n = get_int(doc, "n");
  const int r = get_int(doc, "r");
  if (n < 1 || n > kMaxDimension || r < 1) throw ParseError("n and r must be positive");
  if (!doc.contains("theta") || !doc.at("theta").is_array() || doc.at("theta").size() != static_cast<std::size_t>(r)) {
    throw ParseError("theta must be an array of r rows");
  }
  CurvaturePoint c(n, r);
  const json& theta = doc.at("theta");
  for (int a = 0; a < r; ++a) {
    const json& row = theta.at(static_cast<std::size_t>(a));
    if (!row.is_array() || row.size() != static_cast<std::size_t>(r)) throw ParseError("theta row " + std::to_string(a + 1) + " must have r entries");
    for (int b = 0; b < r; ++b) {
      const json& cell = row.at(static_cast<std::size_t>(b));
      const std::string where = "theta(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
      if (!cell.is_object() || !cell.contains("entries") || !cell.at("entries").is_array()) {
        throw ParseError(where + " needs an \"entries\" array");
      }
      for (const json& e : cell.at("entries")) {
        const int j = get_int(e, "j");
        const int k = get_int(e, "k");
        if (j < 1 || j > n || k < 1 || k > n) throw ParseError(where + ": coordinate index out of range");
        c.add_coefficient(a, b, j - 1, k - 1, Complex(get_number(e, "re"), get_number(e, "im")));
      }
    }
  }
  if (const auto v = validate(c); !v.empty()) throw InvalidArgument(v.front().message());
  return c;
}

CurvaturePoint read_curvature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return curvature_from_json(doc);
}

void write_curvature_file(const std::string& path, const CurvaturePoint& c) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << curvature_to_json(c).dump(2) << "\n";
}

json form_to_json(const ExteriorForm& u) {
  json terms = json::array();
  for (const auto& [key, v] : u.terms()) {
    terms.push_back({{"hol", index_list(key.hol)}, {"antihol", index_list(key.antihol)}, {"re", v.real()}, {"im", v.imag()}});
  }
  return {{"n", u.dim()}, {"p", u.p()}, {"q", u.q()}, {"terms", terms}};
}

ExteriorForm form_from_json(const json& doc) {
  const int n = get_int(doc, "n");
  const int p = get_int(doc, "p");
  const int q = get_int(doc, "q");
  if (n < 0 || n > kMaxDimension || p < 0 || q < 0 || p > n || q > n) throw ParseError("form bidegree out of range");
  ExteriorForm u(n, p, q);
  if (!doc.contains("terms") || !doc.at("terms").is_array()) throw ParseError("form needs a \"terms\" array");
  for (const json& t : doc.at("terms")) {
    if (!t.is_object() || !t.contains("hol") || !t.contains("antihol")) throw ParseError("form term needs hol and antihol");
    const MultiIndex hol = index_from(t.at("hol"));
    const MultiIndex antihol = index_from(t.at("antihol"));
    if (hol.size() != p || antihol.size() != q || hol.max_entry() > n || antihol.max_entry() > n) {
      throw ParseError("form term does not match the bidegree");
    }
    u.add_term(hol, antihol, Complex(get_number(t, "re"), get_number(t, "im")));
  }
  return u;
}

json complex_vector_to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const Complex& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

std::vector<Complex> complex_vector_from_json(const json& doc) {
  if (!doc.is_array()) throw ParseError("complex vector must be an array");
  std::vector<Complex> out;
  for (const json& z : doc) {
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) throw ParseError("complex entry must be [re, im]");
    out.emplace_back(z[0].get<double>(), z[1].get<double>());
  }
  return out;
}

}  // namespace cwpos
