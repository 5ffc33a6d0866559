#pragma once

// JSON ensemble/state files and report serialization.
//
// Ensemble file:
//   { "dim_a": 2, "dim_b": 2, "weights": [0.4, ...],
//     "basis": [ [[re, im], [re, im], ...], ... ] }
// State file:
//   { "dim_a": 2, "dim_b": 2, "amplitudes": [[re, im], ...] }
// Amplitudes are row-major with subsystem A as the slow index.
// Floating-point numbers are written with 17 significant digits.

#include "entx/ensemble.hpp"
#include "entx/hilbert.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace entx::io {

using json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline Index read_dim(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long long>() <= 0) {
    throw ValidationError(std::string("field '") + key + "' must be a positive integer");
  }
  return static_cast<Index>(j.at(key).get<long long>());
}

inline Vector read_amplitudes(const json& arr, Index expected, const std::string& what) {
  if (!arr.is_array()) throw ValidationError(what + " must be an array of [re, im] pairs");
  if (static_cast<Index>(arr.size()) != expected) {
    throw DimensionError(what + " has " + std::to_string(arr.size()) + " amplitudes, expected dim_a*dim_b = " +
                         std::to_string(expected));
  }
  Vector v(expected);
  for (Index i = 0; i < expected; ++i) {
    const json& z = arr[static_cast<std::size_t>(i)];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
      throw ValidationError(what + " entry " + std::to_string(i) + " is not a [re, im] pair");
    }
    v[i] = cplx(z[0].get<double>(), z[1].get<double>());
  }
  return v;
}

inline void write(std::ostream& os, const json& j, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, level + 1);
      }
      os << nl << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
      if (flat) {
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << (indent > 0 ? ", " : ",");
          write(os, j[i], indent, level + 1);
        }
        os << ']';
        return;
      }
      os << '[' << nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ',' << nl;
        os << pad;
        write(os, j[i], indent, level + 1);
      }
      os << nl << close_pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (std::isfinite(x)) os << format_double(x);
      else os << "null";
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Serializes with 17-significant-digit floats.
inline std::string dump(const json& j, int indent = 2) {
  std::ostringstream os;
  detail::write(os, j, indent, 0);
  return os.str();
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

inline json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

inline json amplitudes_to_json(const Vector& v) {
  json arr = json::array();
  for (const auto& z : v) arr.push_back(json::array({z.real(), z.imag()}));
  return arr;
}

inline PureState state_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("state file must be a JSON object");
  const Index da = detail::read_dim(j, "dim_a");
  const Index db = detail::read_dim(j, "dim_b");
  if (!j.contains("amplitudes")) throw ValidationError("state file lacks 'amplitudes'");
  return PureState(da, db, detail::read_amplitudes(j.at("amplitudes"), da * db, "amplitudes"));
}

inline json state_to_json(const PureState& psi) {
  return {{"dim_a", psi.dim_a()}, {"dim_b", psi.dim_b()}, {"amplitudes", amplitudes_to_json(psi.amplitudes())}};
}

inline MicrocanonicalEnsemble ensemble_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("ensemble file must be a JSON object");
  const Index da = detail::read_dim(j, "dim_a");
  const Index db = detail::read_dim(j, "dim_b");
  if (!j.contains("weights") || !j.at("weights").is_array()) {
    throw ValidationError("ensemble file needs a 'weights' array");
  }
  if (!j.contains("basis") || !j.at("basis").is_array()) {
    throw ValidationError("ensemble file needs a 'basis' array");
  }
  std::vector<double> weights;
  for (const auto& w : j.at("weights")) {
    if (!w.is_number()) throw ValidationError("weights must be numbers");
    weights.push_back(w.get<double>());
  }
  std::vector<PureState> members;
  std::size_t k = 0;
  for (const auto& b : j.at("basis")) {
    members.emplace_back(da, db, detail::read_amplitudes(b, da * db, "basis[" + std::to_string(k++) + "]"));
  }
  return MicrocanonicalEnsemble(std::move(weights), std::move(members));
}

inline json ensemble_to_json(const MicrocanonicalEnsemble& e) {
  json basis = json::array();
  for (const auto& m : e.members()) basis.push_back(amplitudes_to_json(m.amplitudes()));
  return {{"dim_a", e.dim_a()}, {"dim_b", e.dim_b()}, {"weights", e.weights()}, {"basis", basis}};
}

inline void add_report(json& out, const MeanEntanglementReport& r) {
  out["s1_sigma"] = r.s1_sigma;
  out["s1_tau"] = r.s1_tau;
  out["delta"] = r.delta;
  out["mean_closed_form"] = r.mean;
}

inline json estimate_to_json(const MonteCarloEstimate& m) {
  return {{"mean", m.mean}, {"std_error", m.std_error}, {"samples", m.samples}, {"seed", m.seed}};
}

/// CSV with a header row and 17-significant-digit cells.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
  os << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << format_double(columns[c][r]);
    os << '\n';
  }
}

}  // namespace entx::io
