#ifndef FOLDCURVE_H
#define FOLDCURVE_H

/* C interface to the folding-curve library.  All objects are opaque handles;
 * every call returns an fc_status and, on failure, leaves a message that
 * fc_last_error() returns until the next call on the same context. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FC_API __declspec(dllexport)
#else
#define FC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fc_status {
  FC_OK = 0,
  FC_CHECK_FAILED = 1,
  FC_INVALID_ARGUMENT = 2,
  FC_NOT_ADJACENT = 3,
  FC_BACKTRACK = 4,
  FC_PRECONDITION = 5,
  FC_BRANCHING = 6,
  FC_DECONVOLUTION = 7,
  FC_IO = 8,
  FC_PARSE = 9,
  FC_INTERNAL = 10
} fc_status;

typedef struct fc_context fc_context;
typedef struct fc_curve fc_curve;
typedef struct fc_report fc_report;

FC_API fc_status fc_context_create(int jobs, fc_context** out);
FC_API void fc_context_destroy(fc_context* ctx);
FC_API const char* fc_last_error(const fc_context* ctx);
FC_API const char* fc_status_name(fc_status status);

/* Curves.  Directions use signed axis codes: 1 = e1, -1 = ē1, 2 = e2, ... */
FC_API fc_status fc_curve_power(fc_context* ctx, int s, const int64_t start[3], int dir, fc_curve** out);
FC_API fc_status fc_curve_seed(fc_context* ctx, int s, int n, fc_curve** out);
/* Word over {L,R}; "positive:<s>" and "alternate:<s>" are accepted too. */
FC_API fc_status fc_curve_folding(fc_context* ctx, const char* folds, fc_curve** out);
FC_API fc_status fc_curve_load(fc_context* ctx, const char* path, fc_curve** out);
FC_API fc_status fc_curve_save(fc_context* ctx, const fc_curve* curve, const char* path);
FC_API void fc_curve_destroy(fc_curve* curve);

FC_API int fc_curve_dim(const fc_curve* curve);
FC_API size_t fc_curve_segments(const fc_curve* curve);
/* Writes dim coordinates of path point i (0 <= i <= segments). */
FC_API fc_status fc_curve_point(const fc_curve* curve, size_t i, int64_t* coords);
FC_API int fc_curve_self_avoiding(const fc_curve* curve);
FC_API int fc_curve_max_multiplicity(const fc_curve* curve);

/* format: "json", "obj" or "svg" (dimension 2 only). */
FC_API fc_status fc_curve_export(fc_context* ctx, const fc_curve* curve, const char* format, const char* path);
/* Voxel mesh of F_s as OBJ; voxel_count may be NULL. */
FC_API fc_status fc_fractal_export(fc_context* ctx, int s, int64_t resolution, const char* path, size_t* voxel_count);

/* Reports.  A failing check yields FC_CHECK_FAILED together with the report. */
FC_API fc_status fc_verify(fc_context* ctx, const char* suite, fc_report** out);
FC_API fc_status fc_classify(fc_context* ctx, fc_report** out);
FC_API fc_status fc_completion_search(fc_context* ctx, fc_report** out);
FC_API fc_status fc_grow(fc_context* ctx, int levels, int s_cap, fc_report** out);
FC_API int fc_report_passed(const fc_report* report);
FC_API const char* fc_report_json(const fc_report* report);
FC_API void fc_report_destroy(fc_report* report);

/* R_x as text; the string lives until the next call on ctx. */
FC_API fc_status fc_relation_at(fc_context* ctx, const int64_t x[3], const char** out);

#ifdef __cplusplus
}
#endif

#endif
