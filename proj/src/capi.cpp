#include "foldcurve/foldcurve.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "foldcurve/analysis.hpp"
#include "foldcurve/blocks.hpp"
#include "foldcurve/convolution.hpp"
#include "foldcurve/generators.hpp"
#include "foldcurve/geometry.hpp"
#include "foldcurve/suites.hpp"

using namespace foldcurve;

struct fc_context {
  int jobs = 1;
  std::string error;
  std::string text;
};

struct fc_curve {
  Curve curve;
};

struct fc_report {
  bool pass = true;
  std::string json;
};

namespace {

fc_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return FC_INVALID_ARGUMENT;
    case ErrorCode::NotAdjacent: return FC_NOT_ADJACENT;
    case ErrorCode::Backtrack: return FC_BACKTRACK;
    case ErrorCode::Precondition: return FC_PRECONDITION;
    case ErrorCode::Branching: return FC_BRANCHING;
    case ErrorCode::Deconvolution: return FC_DECONVOLUTION;
    case ErrorCode::Io: return FC_IO;
    case ErrorCode::Parse: return FC_PARSE;
  }
  return FC_INTERNAL;
}

template <class F>
fc_status guarded(fc_context* ctx, F&& f) {
  if (!ctx) return FC_INVALID_ARGUMENT;
  ctx->error.clear();
  try {
    return f();
  } catch (const Error& e) {
    ctx->error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
  } catch (const std::exception& e) {
    ctx->error = e.what();
  }
  return FC_INTERNAL;
}

fc_status require(fc_context* ctx, bool ok, const char* what) {
  if (ok) return FC_OK;
  ctx->error = what;
  return FC_INVALID_ARGUMENT;
}

fc_status give_curve(Curve c, fc_curve** out) {
  *out = new fc_curve{std::move(c)};
  return FC_OK;
}

fc_status give_report(bool pass, std::string json, fc_report** out) {
  *out = new fc_report{pass, std::move(json)};
  return pass ? FC_OK : FC_CHECK_FAILED;
}

Point point3(const int64_t x[3]) { return Point{x[0], x[1], x[2]}; }

}  // namespace

extern "C" {

fc_status fc_context_create(int jobs, fc_context** out) {
  if (!out || jobs < 1) return FC_INVALID_ARGUMENT;
  *out = new (std::nothrow) fc_context{jobs, {}, {}};
  return *out ? FC_OK : FC_INTERNAL;
}

void fc_context_destroy(fc_context* ctx) { delete ctx; }

const char* fc_last_error(const fc_context* ctx) { return ctx ? ctx->error.c_str() : "null context"; }

const char* fc_status_name(fc_status s) {
  switch (s) {
    case FC_OK: return "ok";
    case FC_CHECK_FAILED: return "check failed";
    case FC_INVALID_ARGUMENT: return "invalid argument";
    case FC_NOT_ADJACENT: return "points not adjacent";
    case FC_BACKTRACK: return "curve backtracks";
    case FC_PRECONDITION: return "precondition violated";
    case FC_BRANCHING: return "branching connexions";
    case FC_DECONVOLUTION: return "deconvolution failed";
    case FC_IO: return "i/o error";
    case FC_PARSE: return "parse error";
    case FC_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fc_status fc_curve_power(fc_context* ctx, int s, const int64_t start[3], int dir, fc_curve** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out && start, "null argument")) return st;
    if (auto st = require(ctx, s >= 0 && s <= 10, "power must be in [0, 10]")) return st;
    return give_curve(curve_of_power(s, point3(start), Direction::from_code(dir)), out);
  });
}

fc_status fc_curve_seed(fc_context* ctx, int s, int n, fc_curve** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out != nullptr, "null argument")) return st;
    return give_curve(build_seed(s, n), out);
  });
}

fc_status fc_curve_folding(fc_context* ctx, const char* folds, fc_curve** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out && folds, "null argument")) return st;
    const std::string w = folds;
    for (const char* kind : {"positive:", "alternate:"}) {
      const std::size_t n = std::strlen(kind);
      if (w.compare(0, n, kind) != 0) continue;
      int s = 0;
      try {
        s = std::stoi(w.substr(n));
      } catch (const std::exception&) {
        throw Error(ErrorCode::Parse, "bad folding order in " + w);
      }
      if (auto st = require(ctx, s >= 0 && s <= 24, "folding order must be in [0, 24]")) return st;
      return give_curve(kind[0] == 'p' ? positive_folding(s) : alternate_folding(s), out);
    }
    return give_curve(unfold(parse_folds(w)), out);
  });
}

fc_status fc_curve_load(fc_context* ctx, const char* path, fc_curve** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out && path, "null argument")) return st;
    return give_curve(curve_from_json(read_text_file(path)), out);
  });
}

fc_status fc_curve_save(fc_context* ctx, const fc_curve* curve, const char* path) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, curve && path, "null argument")) return st;
    write_text_file(path, curve_to_json(curve->curve));
    return FC_OK;
  });
}

void fc_curve_destroy(fc_curve* curve) { delete curve; }

int fc_curve_dim(const fc_curve* curve) { return curve ? curve->curve.dim() : 0; }

size_t fc_curve_segments(const fc_curve* curve) { return curve ? curve->curve.size() : 0; }

fc_status fc_curve_point(const fc_curve* curve, size_t i, int64_t* coords) {
  if (!curve || !coords || i >= curve->curve.path().size()) return FC_INVALID_ARGUMENT;
  const Point& p = curve->curve.path()[i];
  for (int k = 0; k < p.dim(); ++k) coords[k] = p[k];
  return FC_OK;
}

int fc_curve_self_avoiding(const fc_curve* curve) { return curve && self_avoiding(curve->curve) ? 1 : 0; }

int fc_curve_max_multiplicity(const fc_curve* curve) { return curve ? max_multiplicity(curve->curve) : 0; }

fc_status fc_curve_export(fc_context* ctx, const fc_curve* curve, const char* format, const char* path) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, curve && format && path, "null argument")) return st;
    const std::string f = format;
    std::string body;
    if (f == "json") body = curve_to_json(curve->curve);
    else if (f == "obj") body = curve_to_obj(curve->curve);
    else if (f == "svg") body = curve_to_svg(curve->curve);
    else throw Error(ErrorCode::InvalidArgument, "unknown format " + f);
    write_text_file(path, body);
    return FC_OK;
  });
}

fc_status fc_fractal_export(fc_context* ctx, int s, int64_t resolution, const char* path, size_t* voxel_count) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, path != nullptr, "null argument")) return st;
    if (auto st = require(ctx, s >= 0 && s <= 6, "fractal level must be in [0, 6]")) return st;
    if (auto st = require(ctx, resolution >= 1 && resolution <= 64, "resolution must be in [1, 64]")) return st;
    VoxelSet v = fractal_voxelize(s, resolution, ctx->jobs);
    write_text_file(path, voxels_to_obj(v));
    if (voxel_count) *voxel_count = v.voxels.size();
    return FC_OK;
  });
}

fc_status fc_verify(fc_context* ctx, const char* suite, fc_report** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out && suite, "null argument")) return st;
    if (auto st = require(ctx, known_suite(suite), "suite must be core, paper or heavy")) return st;
    auto reports = run_suite(suite, ctx->jobs);
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass;
    return give_report(pass, to_json(suite, reports) + "\n", out);
  });
}

fc_status fc_classify(fc_context* ctx, fc_report** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out != nullptr, "null argument")) return st;
    Report r = classify_pairings();
    return give_report(r.pass, to_json(r) + "\n", out);
  });
}

fc_status fc_completion_search(fc_context* ctx, fc_report** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out != nullptr, "null argument")) return st;
    auto res = completion_search(ctx->jobs);
    Report r("completion_search");
    r.count("placements_tried", static_cast<std::int64_t>(res.placements_tried));
    r.count("distinct_images", static_cast<std::int64_t>(res.distinct_images));
    r.count("stabilizer_order", static_cast<std::int64_t>(res.stabilizer_order));
    r.count("coverings", static_cast<std::int64_t>(res.coverings.size()));
    for (std::size_t i = 0; i < res.coverings.size(); ++i) {
      const bool is_c = res.coverings[i] == covering_C();
      r.note("covering " + std::to_string(i + 1) + (is_c ? ": equals C" : ": differs from C") +
             (res.edge_condition[i] ? ", edge condition holds" : ", edge condition fails"));
    }
    if (res.coverings.size() == 2)
      r.expect(res.coverings[0].transformed(Isometry::sigma()) == res.coverings[1], "sigma does not relate the results");
    else
      r.fail("expected 2 coverings");
    return give_report(r.pass, to_json(r) + "\n", out);
  });
}

fc_status fc_grow(fc_context* ctx, int levels, int s_cap, fc_report** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, out != nullptr, "null argument")) return st;
    if (auto st = require(ctx, levels >= 1 && s_cap >= 1 && s_cap <= 9, "need levels >= 1 and 1 <= s_cap <= 9"))
      return st;
    auto g = grow_single_curve(levels, s_cap, ctx->jobs);
    Report r("grow_single_curve");
    r.count("levels_requested", levels);
    r.count("levels_found", static_cast<std::int64_t>(g.levels.size()));
    for (std::size_t i = 0; i < g.levels.size(); ++i) {
      const auto& l = g.levels[i];
      r.note("level " + std::to_string(i) + ": curve of C^" + std::to_string(l.power) + " from " +
             l.chord_start.str() + " along " + l.dir.name() + " covers P_{" + l.cube.center.str() + "," +
             std::to_string(l.cube.radius) + "}");
    }
    if (g.exhausted) r.note(g.notice);
    // best effort: an exhausted bound is reported, not failed
    return give_report(r.pass, to_json(r) + "\n", out);
  });
}

int fc_report_passed(const fc_report* report) { return report && report->pass ? 1 : 0; }

const char* fc_report_json(const fc_report* report) { return report ? report->json.c_str() : ""; }

void fc_report_destroy(fc_report* report) { delete report; }

fc_status fc_relation_at(fc_context* ctx, const int64_t x[3], const char** out) {
  return guarded(ctx, [&] {
    if (auto st = require(ctx, x && out, "null argument")) return st;
    ctx->text = pairing_at(point3(x)).str();
    *out = ctx->text.c_str();
    return FC_OK;
  });
}

}  // extern "C"
