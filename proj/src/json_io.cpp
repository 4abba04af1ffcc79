#include "plval/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace plval {

std::string format_double(double x) {
  // JSON has no literal for non-finite numbers; -0 prints as 0.
  if (!std::isfinite(x)) return "null";
  if (x == 0.0) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string out = buf;
  // Keep floats recognizable as floats.
  if (out.find_first_of(".eE") == std::string::npos) out += ".0";
  return out;
}

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map order: sorted keys
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        write(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

Error bad_input(const std::string& what) { return Error(ErrorCode::InvalidInput, what); }

std::vector<Vec> read_points(const Json& j, int n) {
  if (!j.is_array()) throw bad_input("\"vertices\" must be an array");
  std::vector<Vec> pts;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) throw bad_input("each vertex needs dim coordinates");
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = row[static_cast<std::size_t>(i)].get<double>();
    pts.push_back(x);
  }
  return pts;
}

Json point(const Vec& x) {
  Json row = Json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) row.push_back(x[i]);
  return row;
}

int read_dim(const Json& j) {
  if (!j.is_object() || !j.contains("dim")) throw bad_input("missing \"dim\"");
  const int n = j.at("dim").get<int>();
  if (n < 1) throw bad_input("\"dim\" must be positive");
  return n;
}

void reject_unknown(const Json& j, std::initializer_list<const char*> known) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) throw bad_input("unknown field \"" + key + "\"");
  }
}

}  // namespace

std::string dump_canonical(const Json& j) {
  std::string out;
  write(j, out);
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw bad_input(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bad_input("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

Polytope polytope_from_json(const Json& j) {
  try {
    const int n = read_dim(j);
    if (!j.contains("vertices")) throw bad_input("missing \"vertices\"");
    const auto pts = read_points(j.at("vertices"), n);
    return hull_from_points(pts);
  } catch (const Json::exception& e) {
    throw bad_input(std::string("polytope JSON: ") + e.what());
  }
}

Json to_json(const Polytope& p) {
  Json j;
  j["dim"] = p.dim();
  j["vertices"] = Json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back(point(v));
  j["facets"] = Json::array();
  for (const auto& f : p.facets()) {
    Json fj;
    fj["normal"] = point(f.normal);
    fj["support"] = f.support;
    fj["vertices"] = f.vertices;
    j["facets"].push_back(fj);
  }
  return j;
}

PLFunction pl_function_from_json(const Json& j) {
  PLFunction f;
  try {
    reject_unknown(j, {"dim", "vertices", "simplices", "values"});
    const int n = read_dim(j);
    f.complex.dim = n;
    f.complex.vertices = read_points(j.at("vertices"), n);
    f.complex.simplices = j.at("simplices").get<std::vector<std::vector<int>>>();
    f.values = j.at("values").get<std::vector<double>>();
  } catch (const Json::exception& e) {
    throw bad_input(std::string("function JSON: ") + e.what());
  }
  for (auto& s : f.complex.simplices) std::sort(s.begin(), s.end());
  const auto bad = check_function(f);
  if (!bad.empty()) throw bad_input("function JSON: " + bad.front());
  return f;
}

Json to_json(const PLFunction& f) {
  Json j;
  j["dim"] = f.dim();
  j["vertices"] = Json::array();
  for (const auto& v : f.complex.vertices) j["vertices"].push_back(point(v));
  j["simplices"] = f.complex.simplices;
  j["values"] = Json::array();
  for (double v : f.values) j["values"].push_back(v);
  return j;
}

ValuationKernel kernel_from_json(const Json& j) {
  ValuationKernel h;
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "power") {
      reject_unknown(j, {"type", "coeff", "exponent"});
      h = PowerKernel{j.at("coeff").get<double>(), j.at("exponent").get<double>()};
    } else if (type == "piecewise_poly") {
      reject_unknown(j, {"type", "breakpoints", "coefficients", "left_exponent", "right_exponent"});
      PiecewisePolyKernel k;
      k.breakpoints = j.at("breakpoints").get<std::vector<double>>();
      k.coefficients = j.at("coefficients").get<std::vector<std::vector<double>>>();
      if (j.contains("left_exponent") && !j.at("left_exponent").is_null()) k.left_exponent = j.at("left_exponent").get<double>();
      if (j.contains("right_exponent") && !j.at("right_exponent").is_null()) k.right_exponent = j.at("right_exponent").get<double>();
      h = std::move(k);
    } else if (type == "tabulated") {
      reject_unknown(j, {"type", "s", "h"});
      h = TabulatedKernel{j.at("s").get<std::vector<double>>(), j.at("h").get<std::vector<double>>()};
    } else if (type == "sum") {
      reject_unknown(j, {"type", "terms"});
      std::vector<ValuationKernel> terms;
      for (const auto& t : j.at("terms")) terms.push_back(kernel_from_json(t));
      h = ValuationKernel::sum(std::move(terms));
    } else {
      throw bad_input("unknown kernel type \"" + type + "\"");
    }
  } catch (const Json::exception& e) {
    throw bad_input(std::string("kernel JSON: ") + e.what());
  }
  h.validate();
  return h;
}

Json to_json(const ValuationKernel& h) {
  return std::visit(
      [](const auto& k) -> Json {
        using T = std::decay_t<decltype(k)>;
        Json j;
        if constexpr (std::is_same_v<T, PowerKernel>) {
          j["type"] = "power";
          j["coeff"] = k.coeff;
          j["exponent"] = k.exponent;
        } else if constexpr (std::is_same_v<T, PiecewisePolyKernel>) {
          j["type"] = "piecewise_poly";
          j["breakpoints"] = k.breakpoints;
          j["coefficients"] = k.coefficients;
          j["left_exponent"] = k.left_exponent ? Json(*k.left_exponent) : Json(nullptr);
          j["right_exponent"] = k.right_exponent ? Json(*k.right_exponent) : Json(nullptr);
        } else if constexpr (std::is_same_v<T, TabulatedKernel>) {
          j["type"] = "tabulated";
          j["s"] = k.s;
          j["h"] = k.h;
        } else {
          j["type"] = "sum";
          j["terms"] = Json::array();
          for (const auto& t : k) j["terms"].push_back(to_json(t));
        }
        return j;
      },
      h.variant());
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["case"] = r.case_id;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["residual"] = r.residual;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.passed;
  j["skipped"] = r.skipped;
  j["note"] = r.note;
  j["seconds"] = r.seconds;
  return j;
}

Json to_json(const GrowthReport& r) {
  Json j;
  j["p"] = r.p;
  j["p_star"] = r.p_star;
  j["low_evaluated"] = r.low_evaluated;
  j["high_evaluated"] = r.high_evaluated;
  j["low_exponent"] = r.low_exponent;
  j["high_exponent"] = r.high_exponent;
  j["low_residual"] = r.low_residual;
  j["top_derivative_variation"] = r.top_derivative_variation;
  j["high_residual"] = r.high_residual;
  j["low_pass"] = r.low_pass;
  j["high_pass"] = r.high_pass;
  j["pass"] = r.passed();
  return j;
}

std::string profile_csv(const CProfile& profile) {
  std::string out = "s,c";
  for (std::size_t j = 1; j < profile.derivatives.size(); ++j) out += ",c" + std::to_string(j);
  out += '\n';
  for (std::size_t i = 0; i < profile.s.size(); ++i) {
    out += format_double(profile.s[i]) + "," + format_double(profile.c[i]);
    for (std::size_t j = 1; j < profile.derivatives.size(); ++j) out += "," + format_double(profile.derivatives[j][i]);
    out += '\n';
  }
  return out;
}

CProfile profile_from_csv(const std::string& text, int n) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> s, c;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line.rfind("s,c", 0) != 0) throw bad_input("profile CSV must start with an \"s,c\" header");
      continue;
    }
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) throw bad_input("profile CSV row needs s and c");
    try {
      s.push_back(std::stod(a));
      c.push_back(std::stod(b));
    } catch (const std::exception&) {
      throw bad_input("profile CSV has a non-numeric entry: " + line);
    }
  }
  return make_profile(n, std::move(s), std::move(c));
}

}  // namespace plval
