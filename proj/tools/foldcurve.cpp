// Command-line front end; talks to the library only through foldcurve.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "foldcurve/foldcurve.h"

namespace {

struct Usage {
  std::string what;
};

std::vector<int64_t> parse_point(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw Usage{"bad coordinate '" + item + "'"};
    } catch (const std::logic_error&) {
      throw Usage{"bad coordinate '" + item + "'"};
    }
  }
  if (out.size() != 3) throw Usage{"expected x,y,z but got '" + text + "'"};
  return out;
}

int exit_for(fc_status s) {
  if (s == FC_OK) return 0;
  if (s == FC_CHECK_FAILED) return 1;
  return 2;
}

class Session {
 public:
  explicit Session(int jobs) {
    if (fc_context_create(jobs, &ctx_) != FC_OK) throw Usage{"--jobs must be at least 1"};
  }
  ~Session() { fc_context_destroy(ctx_); }
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  fc_context* get() const { return ctx_; }

  int fail(fc_status s) const {
    std::cerr << "error: " << fc_status_name(s);
    const std::string msg = fc_last_error(ctx_);
    if (!msg.empty()) std::cerr << ": " << msg;
    std::cerr << "\n";
    return exit_for(s);
  }

  // Writes the report to `out` or stdout, then maps the status.
  int emit(fc_status s, fc_report* r, const std::string& out) const {
    if (!r) return fail(s);
    const std::string json = fc_report_json(r);
    fc_report_destroy(r);
    if (out.empty()) {
      std::cout << json;
    } else {
      std::ofstream f(out, std::ios::binary);
      if (!f || !(f << json)) {
        std::cerr << "error: cannot write " << out << "\n";
        return 2;
      }
      std::cerr << (s == FC_OK ? "pass" : "FAIL") << ", report written to " << out << "\n";
    }
    return exit_for(s);
  }

 private:
  fc_context* ctx_ = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Folding-curve coverings of Z^3: generation, verification and export"};
  app.require_subcommand(1);
  app.fallthrough();
  int jobs = 1;
  std::string out;
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--out", out, "output file (report JSON, curve JSON or geometry)");

  auto* gen = app.add_subcommand("gen", "generate a curve");
  std::optional<int> power, seed;
  std::string from = "0,0,0", folds;
  int dir = 1, dim = 3;
  auto* o_power = gen->add_option("--power", power, "curve of C^s");
  gen->add_option("--from", from, "chord start x,y,z (on the 2^s grid)");
  gen->add_option("--dir", dir, "signed axis of the chord: 1,-1,2,-2,3,-3")->check(CLI::IsMember({1, -1, 2, -2, 3, -3}));
  auto* o_seed = gen->add_option("--seed", seed, "seed curve C_s");
  gen->add_option("--dim", dim, "dimension of the seed curve");
  auto* o_folds = gen->add_option("--folds", folds, "fold word over L,R, or positive:<s> / alternate:<s>");
  o_power->excludes(o_seed)->excludes(o_folds);
  o_seed->excludes(o_folds);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "core";
  verify->add_option("--suite", suite, "core, paper or heavy")->check(CLI::IsMember({"core", "paper", "heavy"}));

  auto* rel = app.add_subcommand("relations", "pairing relations");
  bool classify = false;
  std::string at;
  auto* o_classify = rel->add_flag("--classify", classify, "classify all 15 matchings by property (P)");
  auto* o_at = rel->add_option("--at", at, "print R_x for x = x,y,z");
  o_classify->excludes(o_at);

  app.add_subcommand("search", "completion search for the block placements");

  auto* grow = app.add_subcommand("grow", "grow nested cubes covered by single curves");
  int levels = 2, cap = 6;
  grow->add_option("--levels", levels, "levels requested")->check(CLI::PositiveNumber);
  grow->add_option("--cap", cap, "largest power searched")->check(CLI::Range(1, 9));

  auto* exp = app.add_subcommand("export", "export geometry");
  std::optional<int> fractal;
  int64_t res = 4;
  std::string curve_file, format = "obj";
  auto* o_fractal = exp->add_option("--fractal", fractal, "voxelize F_s");
  exp->add_option("--res", res, "voxels per unit (power of two)");
  auto* o_curve = exp->add_option("--curve", curve_file, "curve JSON to convert");
  exp->add_option("--format", format, "json, obj or svg for --curve")->check(CLI::IsMember({"json", "obj", "svg"}));
  o_fractal->excludes(o_curve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Session ss(jobs);
    fc_context* ctx = ss.get();

    if (*gen) {
      fc_curve* c = nullptr;
      fc_status s;
      if (power) {
        auto x = parse_point(from);
        s = fc_curve_power(ctx, *power, x.data(), dir, &c);
      } else if (seed) {
        s = fc_curve_seed(ctx, *seed, dim, &c);
      } else if (!folds.empty()) {
        s = fc_curve_folding(ctx, folds.c_str(), &c);
      } else {
        throw Usage{"gen needs --power, --seed or --folds"};
      }
      if (s != FC_OK) return ss.fail(s);
      std::cout << fc_curve_segments(c) << " segments, dimension " << fc_curve_dim(c)
                << ", self-avoiding: " << (fc_curve_self_avoiding(c) ? "yes" : "no")
                << ", max multiplicity " << fc_curve_max_multiplicity(c) << "\n";
      if (!out.empty()) s = fc_curve_save(ctx, c, out.c_str());
      fc_curve_destroy(c);
      return s == FC_OK ? 0 : ss.fail(s);
    }

    if (*verify) {
      fc_report* r = nullptr;
      fc_status s = fc_verify(ctx, suite.c_str(), &r);
      return ss.emit(s, r, out);
    }

    if (*rel) {
      if (classify) {
        fc_report* r = nullptr;
        fc_status s = fc_classify(ctx, &r);
        return ss.emit(s, r, out);
      }
      if (at.empty()) throw Usage{"relations needs --classify or --at x,y,z"};
      auto x = parse_point(at);
      const char* text = nullptr;
      fc_status s = fc_relation_at(ctx, x.data(), &text);
      if (s != FC_OK) return ss.fail(s);
      std::cout << "R_{" << x[0] << "," << x[1] << "," << x[2] << "} = " << text << "\n";
      return 0;
    }

    if (app.got_subcommand("search")) {
      fc_report* r = nullptr;
      fc_status s = fc_completion_search(ctx, &r);
      return ss.emit(s, r, out);
    }

    if (*grow) {
      fc_report* r = nullptr;
      fc_status s = fc_grow(ctx, levels, cap, &r);
      return ss.emit(s, r, out);
    }

    if (*exp) {
      if (out.empty()) throw Usage{"export needs --out"};
      if (fractal) {
        size_t n = 0;
        fc_status s = fc_fractal_export(ctx, *fractal, res, out.c_str(), &n);
        if (s != FC_OK) return ss.fail(s);
        std::cout << n << " voxels written to " << out << "\n";
        return 0;
      }
      if (curve_file.empty()) throw Usage{"export needs --fractal or --curve"};
      fc_curve* c = nullptr;
      fc_status s = fc_curve_load(ctx, curve_file.c_str(), &c);
      if (s != FC_OK) return ss.fail(s);
      s = fc_curve_export(ctx, c, format.c_str(), out.c_str());
      fc_curve_destroy(c);
      if (s != FC_OK) return ss.fail(s);
      std::cout << "written " << out << "\n";
      return 0;
    }
  } catch (const Usage& u) {
    std::cerr << "usage error: " << u.what << "\n";
    return 2;
  }
  return 2;
}
