#pragma once

// Subcommands of the `sphfan` tool.  Each command reads documents from disk
// and produces a single JSON document for stdout, a human summary for stderr
// and an exit status:
//
//   0  every check passed
//   1  a semantic check failed
//   2  unreadable or malformed input

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sphfan/cone.hpp"
#include "sphfan/error.hpp"
#include "sphfan/feasibility.hpp"
#include "sphfan/fourier_motzkin.hpp"
#include "sphfan/galois.hpp"
#include "sphfan/io.hpp"
#include "sphfan/morphism.hpp"
#include "sphfan/spherical.hpp"

namespace sphfan::cli {

using io::Json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;
inline constexpr std::size_t kDefaultMaxRank = 8;

struct Options {
  bool strict = false;
  bool autocomplete = false;
  bool closure = false;
  bool oracle = false;
  bool warn_rho = false;
  std::optional<std::size_t> cone_index;
  std::size_t max_rank = kDefaultMaxRank;
};

struct CommandResult {
  int exit_code = kExitPass;
  std::string out;      // stdout: exactly one JSON document
  std::string summary;  // stderr
};

// SPHFAN_MAX_DIM, if set to a positive integer; otherwise the default cap.
inline std::size_t max_rank_from_env() {
  const char* raw = std::getenv("SPHFAN_MAX_DIM");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxRank;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v <= 0) throw DomainError(std::string("SPHFAN_MAX_DIM must be a positive integer, got \"") + raw + "\"");
  return static_cast<std::size_t>(v);
}

namespace detail {

class InputError : public Error {
 public:
  using Error::Error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline SphericalDatum load_datum(const std::string& path, const Options& opts) {
  SphericalDatum d = io::parse_datum(read_file(path));
  if (d.rank() > opts.max_rank) {
    throw InputError("rank " + std::to_string(d.rank()) + " of \"" + path + "\" exceeds SPHFAN_MAX_DIM=" +
                     std::to_string(opts.max_rank));
  }
  return d;
}

// Accumulates checks in order and tracks the overall verdict.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Json& add(const std::string& axiom, const std::string& subject, bool pass) {
    Json c{{"axiom", axiom}, {"subject", subject}, {"result", pass ? "pass" : "fail"}};
    if (!pass) {
      passed_ = false;
      summary_ << "FAIL " << axiom << " " << subject << "\n";
    }
    checks_.push_back(std::move(c));
    return checks_.back();
  }

  void note(const std::string& line) { summary_ << line << "\n"; }

  Json& extra() { return extra_; }
  bool passed() const { return passed_; }

  CommandResult finish() {
    Json j = io::envelope("report");
    j["command"] = command_;
    j["overall"] = passed_ ? "pass" : "fail";
    j["checks"] = checks_;
    for (auto& [k, v] : extra_.items()) j[k] = v;
    summary_ << command_ << ": " << (passed_ ? "pass" : "fail") << " (" << checks_.size() << " checks)\n";
    return {passed_ ? kExitPass : kExitFail, io::dump(j), summary_.str()};
  }

 private:
  std::string command_;
  Json checks_ = Json::array();
  Json extra_ = Json::object();
  bool passed_ = true;
  std::ostringstream summary_;
};

inline std::string member(std::size_t i) { return "cones[" + std::to_string(i) + "]"; }

inline CommandResult input_failure(const std::string& command, const std::string& message,
                                   const io::ParseError* pe = nullptr) {
  Json j = io::envelope("report");
  j["command"] = command;
  j["overall"] = "error";
  Json err{{"message", message}};
  if (pe != nullptr) {
    if (pe->line() != 0) {
      err["line"] = pe->line();
      err["column"] = pe->column();
    }
    if (!pe->path().empty()) err["path"] = pe->path();
  }
  j["error"] = std::move(err);
  j["checks"] = Json::array();
  return {kExitInput, io::dump(j), "error: " + message + "\n"};
}

// Runs `body` with the error-to-exit-status mapping shared by all commands.
inline CommandResult guarded(const std::string& command, const Options& opts,
                             const std::function<CommandResult()>& body) {
  std::optional<ScopedCrossCheck> cross_check;
  if (opts.oracle) cross_check.emplace([](const FeasibilitySystem& s) { return fm::feasible(s); });
  try {
    return body();
  } catch (const io::ParseError& e) {
    return input_failure(command, e.what(), &e);
  } catch (const OracleDisagreement& e) {
    Report r(command);
    r.add("ORACLE", "feasibility", false)["detail"] = e.what();
    return r.finish();
  } catch (const Error& e) {
    // Shape, color and limit errors all stem from the input documents.
    return input_failure(command, e.what());
  }
}

inline void add_cone_checks(Report& r, const std::string& subject, const ColoredConeReport& cr) {
  Json& c1 = r.add("CC1", subject, cr.cc1);
  if (!cr.cc1) {
    c1["detail"] = cr.cc1_reason;
    if (cr.cc1_counterexample) c1["witness"] = io::vec_json(*cr.cc1_counterexample);
  }
  Json& c2 = r.add("CC2", subject, cr.cc2);
  if (cr.cc2_witness) c2["witness"] = io::vec_json(*cr.cc2_witness);
}

inline void add_cf2_failure(Report& r, const Cf2Violation& v, const std::vector<ColoredCone>& members) {
  auto index = [&](const ColoredCone& cc) -> std::string {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i] == cc) return member(i);
    return "closure";
  };
  Json& c = r.add("CF2", index(v.first()) + "," + index(v.second()), false);
  c["witness"] = io::vec_json(v.witness());
  c["cones"] = Json::array({io::colored_cone_json(v.first()), io::colored_cone_json(v.second())});
}

}  // namespace detail

inline CommandResult cmd_validate(const std::string& datum_path, const std::string& fan_path, const Options& opts) {
  return detail::guarded("validate", opts, [&]() -> CommandResult {
    const SphericalDatum d = detail::load_datum(datum_path, opts);
    ColoredFan fan = io::parse_fan(detail::read_file(fan_path), d);
    detail::Report r("validate");
    if (opts.autocomplete) {
      try {
        const std::size_t before = fan.size();
        fan = faces_closure(d, fan.cones());
        if (fan.size() != before) r.note("autocomplete added " + std::to_string(fan.size() - before) + " faces");
      } catch (const Cf2Violation& v) {
        detail::add_cf2_failure(r, v, fan.cones());
        return r.finish();
      }
    }
    const FanReport fr = validate_colored_fan(d, fan);
    for (std::size_t i = 0; i < fan.size(); ++i) detail::add_cone_checks(r, detail::member(i), fr.cones[i]);
    if (fr.cf1) {
      r.add("CF1", "fan", true);
    } else {
      for (const auto& f : fr.cf1_failures)
        r.add("CF1", detail::member(f.member), false)["missing_face"] = io::colored_cone_json(f.missing_face);
    }
    if (fr.cf2) {
      r.add("CF2", "fan", true);
    } else {
      for (const auto& f : fr.cf2_failures)
        r.add("CF2", detail::member(f.first) + "," + detail::member(f.second), false)["witness"] =
            io::vec_json(f.witness);
    }
    if (opts.strict) {
      for (std::size_t i = 0; i < fan.size(); ++i)
        r.add("SC", detail::member(i), is_strictly_convex_colored(d, fan.cones()[i]));
    }
    r.extra()["orbit_count"] = orbit_count(fan);
    r.extra()["maximal_cones"] = maximal_cones(d, fan).size();
    return r.finish();
  });
}

inline CommandResult cmd_faces(const std::string& datum_path, const std::string& fan_path, const Options& opts) {
  return detail::guarded("faces", opts, [&]() -> CommandResult {
    const SphericalDatum d = detail::load_datum(datum_path, opts);
    const ColoredFan fan = io::parse_fan(detail::read_file(fan_path), d);
    std::vector<std::size_t> chosen;
    if (opts.cone_index) {
      if (*opts.cone_index >= fan.size()) {
        throw detail::InputError("cone index " + std::to_string(*opts.cone_index) + " out of range (fan has " +
                                 std::to_string(fan.size()) + " cones)");
      }
      chosen.push_back(*opts.cone_index);
    } else {
      for (std::size_t i = 0; i < fan.size(); ++i) chosen.push_back(i);
    }

    detail::Report r("faces");
    for (auto i : chosen) detail::add_cone_checks(r, detail::member(i), validate_colored_cone(d, fan.cones()[i]));
    if (!r.passed()) return r.finish();

    std::vector<ColoredCone> all;
    for (auto i : chosen)
      for (auto& f : colored_faces(d, fan.cones()[i])) sphfan::detail::push_if_new(all, std::move(f));
    std::stable_sort(all.begin(), all.end(), [](const ColoredCone& a, const ColoredCone& b) {
      return a.cone.dimension() < b.cone.dimension();
    });
    Json faces = Json::array();
    for (const auto& f : all) {
      Json entry = io::colored_cone_json(f);
      entry["dimension"] = f.cone.dimension();
      faces.push_back(std::move(entry));
    }
    r.extra()["faces"] = std::move(faces);
    r.note(std::to_string(all.size()) + " colored faces");
    return r.finish();
  });
}

inline CommandResult cmd_invariant(const std::string& datum_path, const std::string& fan_path,
                                   const std::string& action_path, const Options& opts) {
  return detail::guarded("invariant", opts, [&]() -> CommandResult {
    const SphericalDatum d = detail::load_datum(datum_path, opts);
    const ColoredFan fan = io::parse_fan(detail::read_file(fan_path), d);
    const GaloisAction a = io::parse_action(detail::read_file(action_path), d);
    detail::Report r("invariant");

    const ActionReport ar = validate_action(a);
    if (ar.valid()) {
      r.add("ACT", "action", true);
    } else {
      for (const auto& v : ar.violations) {
        Json& c = r.add("ACT", v.element.empty() ? v.check : v.check + ":" + v.element, false);
        c["detail"] = v.detail;
        if (v.vector) c["witness"] = io::vec_json(*v.vector);
      }
      return r.finish();
    }

    if (opts.closure) {
      try {
        const ColoredFan closed = invariant_closure(a, fan.cones());
        CommandResult res{kExitPass, io::serialize(closed),
                          "invariant: closure has " + std::to_string(closed.size()) + " cones\n"};
        return res;
      } catch (const Cf2Violation& v) {
        detail::add_cf2_failure(r, v, fan.cones());
        return r.finish();
      }
    }

    const InvarianceReport inv = is_invariant_fan(a, fan);
    if (inv.invariant()) {
      r.add("INV", "fan", true);
    } else {
      for (const auto& f : inv.failures)
        r.add("INV", f.element + "(" + detail::member(f.member) + ")", false)["image"] =
            io::colored_cone_json(f.image);
    }
    return r.finish();
  });
}

inline CommandResult cmd_morphism(const std::string& src_datum_path, const std::string& tgt_datum_path,
                                  const std::string& morphism_path, const std::string& src_fan_path,
                                  const std::string& tgt_fan_path, const Options& opts) {
  return detail::guarded("morphism", opts, [&]() -> CommandResult {
    const SphericalDatum src = detail::load_datum(src_datum_path, opts);
    const SphericalDatum tgt = detail::load_datum(tgt_datum_path, opts);
    const FanMorphism m = io::parse_morphism(detail::read_file(morphism_path), src, tgt);
    const ColoredFan f1 = io::parse_fan(detail::read_file(src_fan_path), src);
    const ColoredFan f2 = io::parse_fan(detail::read_file(tgt_fan_path), tgt);
    detail::Report r("morphism");

    const MorphismReport mr = validate_morphism(m);
    Json& surj = r.add("MOR", "surjective", mr.surjective);
    surj["rank"] = mr.map_rank;
    Json& onto = r.add("MOR", "valuation_cone_onto", mr.valuation_onto);
    if (mr.image_outside_target) onto["witness"] = io::vec_json(*mr.image_outside_target);
    if (mr.target_not_covered) onto["witness"] = io::vec_json(*mr.target_not_covered);
    if (opts.warn_rho && !mr.rho_warnings.empty()) {
      Json warnings = Json::array();
      for (const auto& w : mr.rho_warnings) {
        warnings.push_back(Json{{"color", w.color},
                                {"mapped_rho", io::vec_json(w.mapped_rho)},
                                {"target_rho", io::vec_json(w.target_rho)}});
        r.note("warning: rho is not compatible with the color map at " + w.color);
      }
      r.extra()["warnings"] = std::move(warnings);
    }

    const FanMorphismReport fm_report = is_morphism_of_fans(m, f1, f2);
    for (std::size_t i = 0; i < fm_report.matches.size(); ++i) {
      Json& c = r.add("MOR", detail::member(i), fm_report.matches[i].has_value());
      if (fm_report.matches[i]) c["matched"] = *fm_report.matches[i];
    }
    return r.finish();
  });
}

}  // namespace sphfan::cli
