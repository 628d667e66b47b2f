#pragma once

// Text formats and JSON reports.
//
// Point-set file: first line "d N", then N lines of d numbers separated by
// single spaces. Weight spec: {"type":"explicit","values":[...]} or
// {"type":"family","name":"polynomial","a":2.0}. Every double is written
// with %.17g, so it reads back to the same bits; non-finite values are
// written as the strings "inf", "-inf" and "nan".

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wlpdisc/bounds.hpp"
#include "wlpdisc/core.hpp"
#include "wlpdisc/discrepancy.hpp"
#include "wlpdisc/pointsets.hpp"
#include "wlpdisc/search.hpp"
#include "wlpdisc/verify.hpp"

namespace wlpdisc {

using Json = nlohmann::ordered_json;

[[nodiscard]] inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// point sets

[[nodiscard]] inline std::string write_point_set(const PointSet& pts) {
  std::string out = std::to_string(pts.d()) + " " + std::to_string(pts.n()) + "\n";
  for (std::size_t k = 0; k < pts.n(); ++k) {
    for (std::size_t j = 0; j < pts.d(); ++j) {
      if (j) out += ' ';
      out += format_double(pts(k, j));
    }
    out += '\n';
  }
  return out;
}

namespace detail {

[[nodiscard]] inline double parse_double(std::string_view s, std::size_t line) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + tmp + "' is not a number");
  }
  return v;
}

[[nodiscard]] inline std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto sp = line.find(' ', start);
    out.push_back(line.substr(start, sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return out;
}

}  // namespace detail

[[nodiscard]] inline PointSet parse_point_set(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty point-set file");
  const auto header = detail::split_spaces(lines[0]);
  if (header.size() != 2) throw ParseError("line 1: expected 'd N'");
  const auto d = detail::parse_integer<std::size_t>(header[0], "dimension");
  const auto n = detail::parse_integer<std::size_t>(header[1], "point count");
  if (d == 0) throw ParseError("line 1: dimension must be >= 1");
  if (lines.size() - 1 != n) {
    throw ParseError("header announces " + std::to_string(n) + " points, file has " + std::to_string(lines.size() - 1));
  }
  std::vector<double> coords;
  coords.reserve(n * d);
  for (std::size_t k = 0; k < n; ++k) {
    const auto fields = detail::split_spaces(lines[k + 1]);
    if (fields.size() != d) {
      throw ParseError("line " + std::to_string(k + 2) + ": expected " + std::to_string(d) + " numbers");
    }
    for (auto f : fields) coords.push_back(detail::parse_double(f, k + 2));
  }
  return PointSet(d, std::move(coords));
}

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[nodiscard]] inline PointSet read_point_set(const std::string& path) { return parse_point_set(read_file(path)); }

// ---------------------------------------------------------------------------
// weight specs

[[nodiscard]] inline WeightSequence weights_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseError("weight spec must be an object with a \"type\" field");
  }
  const auto type = j["type"].get<std::string>();
  if (type == "explicit") {
    if (!j.contains("values") || !j["values"].is_array()) throw ParseError("explicit weights need a \"values\" array");
    std::vector<double> v;
    for (const auto& x : j["values"]) {
      if (!x.is_number()) throw ParseError("weight values must be numbers");
      v.push_back(x.get<double>());
    }
    return WeightSequence::explicit_values(std::move(v));
  }
  if (type != "family") throw ParseError("unknown weight type '" + type + "'");
  if (!j.contains("name") || !j["name"].is_string()) throw ParseError("family weights need a \"name\"");
  const auto name = j["name"].get<std::string>();
  for (auto f : {WeightFamily::Constant, WeightFamily::Polynomial, WeightFamily::Geometric, WeightFamily::Logarithmic,
                 WeightFamily::InverseSqrtLog}) {
    if (name != family_name(f)) continue;
    const std::string key(family_parameter_key(f));
    if (!j.contains(key) || !j[key].is_number()) throw ParseError(name + " weights need numeric \"" + key + "\"");
    return WeightSequence::family(f, j[key].get<double>());
  }
  throw ParseError("unknown weight family '" + name + "'");
}

/// Inline JSON when the argument starts with '{', otherwise a file path.
[[nodiscard]] inline WeightSequence parse_weight_spec(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  const std::string text = first != std::string::npos && arg[first] == '{' ? arg : read_file(arg);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("weight spec is not valid JSON: ") + e.what());
  }
  return weights_from_json(j);
}

[[nodiscard]] inline Json to_json(const WeightSequence& w) {
  Json j;
  if (w.is_explicit()) {
    j["type"] = "explicit";
    j["values"] = w.values();
  } else {
    const auto [kind, c] = w.family_spec();
    j["type"] = "family";
    j["name"] = std::string(family_name(kind));
    j[std::string(family_parameter_key(kind))] = c;
  }
  return j;
}

// ---------------------------------------------------------------------------
// serialization

namespace detail {

inline void dump_json(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad + Json(it.key()).dump() + (indent > 0 ? ": " : ":");
        dump_json(it.value(), out, indent, depth + 1);
      }
      out += nl + close + "}";
      return;
    }
    case Json::value_t::array: {
      out += "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += indent > 0 ? ", " : ",";
        dump_json(j[i], out, indent, depth + 1);
      }
      out += "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "\"" + format_double(v) + "\"";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace detail

/// JSON text with every double at 17 significant digits.
[[nodiscard]] inline std::string dump(const Json& j, int indent = 2) {
  std::string out;
  detail::dump_json(j, out, indent, 0);
  out += '\n';
  return out;
}

/// Reads a double written by dump(), accepting the non-finite strings.
[[nodiscard]] inline double json_double(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
    if (s == "nan") return std::nan("");
    throw ParseError("expected a number, got '" + s + "'");
  }
  return j.get<double>();
}

// ---------------------------------------------------------------------------
// result types

[[nodiscard]] inline Json to_json(const DiscrepancyResult& r) {
  Json j;
  j["value"] = r.value;
  j["method"] = std::string(method_name(r.method));
  if (r.std_error) j["std_error"] = *r.std_error;
  j["p"] = r.p;
  j["d"] = r.d;
  j["n"] = r.n;
  j["power"] = r.power;
  if (r.power_std_error) j["power_std_error"] = *r.power_std_error;
  return j;
}

[[nodiscard]] inline DiscrepancyResult discrepancy_result_from_json(const Json& j) {
  DiscrepancyResult r;
  try {
    r.value = json_double(j.at("value"));
    const auto m = j.at("method").get<std::string>();
    if (m == method_name(DiscrepancyMethod::ExactEvenP)) {
      r.method = DiscrepancyMethod::ExactEvenP;
    } else if (m == method_name(DiscrepancyMethod::Quadrature)) {
      r.method = DiscrepancyMethod::Quadrature;
    } else if (m == method_name(DiscrepancyMethod::MonteCarlo)) {
      r.method = DiscrepancyMethod::MonteCarlo;
    } else {
      throw ParseError("unknown method '" + m + "'");
    }
    if (j.contains("std_error")) r.std_error = json_double(j["std_error"]);
    r.p = json_double(j.at("p"));
    r.d = j.at("d").get<std::size_t>();
    r.n = j.at("n").get<std::size_t>();
    r.power = json_double(j.at("power"));
    if (j.contains("power_std_error")) r.power_std_error = json_double(j["power_std_error"]);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed discrepancy result: ") + e.what());
  }
  return r;
}

[[nodiscard]] inline Json to_json(const BoundReport& r) {
  Json j;
  j["p"] = r.p;
  j["eps"] = r.eps;
  j["d"] = r.d;
  j["lower"] = r.lower;
  if (r.upper) {
    j["upper"] = *r.upper;
    j["upper_C"] = *r.upper_constant;
    j["upper_parametric_in_C"] = true;
  } else {
    j["upper"] = nullptr;
  }
  j["tau_p"] = r.tau_p;
  j["weights"] = {{"min", r.weights.min},
                  {"max", r.weights.max},
                  {"sum_gamma_pow_p_half", r.weights.power_sum},
                  {"leading", r.weights.leading}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

[[nodiscard]] inline Json to_json(const TractabilityVerdict& v) {
  Json j;
  j["class"] = std::string(class_name(v.tractability));
  j["conditions"] = {{"spt", v.cond_spt}, {"pt", v.cond_pt}, {"wt", v.cond_wt}};
  j["rationale"] = v.rationale;
  j["caveat"] = v.caveat;
  return j;
}

[[nodiscard]] inline Json to_json(const PartialSumTrend& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.d.size(); ++i) {
    rows.push_back({{"d", t.d[i]}, {"sum", t.sum[i]}, {"sum_over_log_d", t.over_log_d[i]}, {"sum_over_d", t.over_d[i]}});
  }
  return rows;
}

[[nodiscard]] inline Json to_json(const InverseBracket& b) {
  Json j;
  j["eps"] = b.eps;
  j["d"] = b.d;
  j["p"] = b.p;
  j["lower"] = b.lower;
  if (b.upper_estimate) {
    j["upper_estimate"] = *b.upper_estimate;
  } else {
    j["upper_estimate"] = kInfinity;
  }
  if (b.witness) {
    j["witness"] = {{"generator", to_string(b.witness->generator)}, {"n", b.witness->n}, {"value", b.witness_value}};
    if (b.witness_std_error) j["witness"]["std_error"] = *b.witness_std_error;
  } else {
    j["witness"] = nullptr;
  }
  j["threshold"] = b.threshold;
  j["initial"] = b.initial;
  j["method"] = std::string(method_name(b.method));
  j["evaluations"] = b.evaluations;
  if (!b.caveat.empty()) j["caveat"] = b.caveat;
  return j;
}

[[nodiscard]] inline Json to_json(const std::vector<CheckResult>& results) {
  Json checks = Json::array();
  for (const auto& r : results) {
    checks.push_back({{"id", r.id},
                      {"status", r.status == CheckStatus::Pass ? "pass" : "fail"},
                      {"max_abs_err", r.max_abs_err},
                      {"tolerance", r.tolerance},
                      {"grid", r.grid}});
  }
  Json j;
  j["all_passed"] = all_passed(results);
  j["checks"] = checks;
  return j;
}

}  // namespace wlpdisc
