/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
/*
 * C interface to the latent tensor reconstruction library.
 *
 * Every function returns an ltr_status. On failure a human-readable message
 * is available from ltr_last_error() on the calling thread until the next
 * call into the library from that thread. Objects are opaque handles owned
 * by the caller and released with the matching *_free function. Strings
 * returned through char** are released with ltr_string_free.
 *
 * Matrices cross the boundary as row-major double arrays (one example per
 * row).
 */
#ifndef LTR_LTR_H
#define LTR_LTR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LTR_BUILDING_LIBRARY)
#    define LTR_API __declspec(dllexport)
#  else
#    define LTR_API __declspec(dllimport)
#  endif
#else
#  define LTR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ltr_status {
  LTR_OK = 0,
  LTR_ERR_INVALID_ARGUMENT = 1,
  LTR_ERR_DIMENSION = 2,
  LTR_ERR_IO = 3,
  LTR_ERR_DIVERGED = 4,
  LTR_ERR_NUMERIC = 5,
  LTR_ERR_UNDEFINED = 6, /* result not defined, e.g. correlation of a constant */
  LTR_ERR_CHECK_FAILED = 7,
  LTR_ERR_INTERNAL = 8
} ltr_status;

typedef struct ltr_model ltr_model;
typedef struct ltr_dataset ltr_dataset;

LTR_API const char* ltr_version(void);
LTR_API const char* ltr_status_string(ltr_status status);
LTR_API const char* ltr_last_error(void);
LTR_API void ltr_string_free(char* s);

/* ---- datasets ---- */

/* Copies x (m x n) and y (m x n_y). */
LTR_API ltr_status ltr_dataset_create(const double* x, size_t m, size_t n, const double* y, size_t n_y,
                                      ltr_dataset** out);
/* Appends another input view (m x n_v) to a dataset, making it multi-view. */
LTR_API ltr_status ltr_dataset_add_view(ltr_dataset* data, const double* x, size_t m, size_t n_v);
LTR_API ltr_status ltr_dataset_load_csv(const char* path, ltr_dataset** out);
LTR_API ltr_status ltr_dataset_load_views(const char* const* view_paths, size_t n_views, const char* target_path,
                                          ltr_dataset** out);
LTR_API ltr_status ltr_dataset_save_csv(const ltr_dataset* data, const char* path);
LTR_API ltr_status ltr_dataset_shape(const ltr_dataset* data, size_t* rows, size_t* views, size_t* n_y);
LTR_API ltr_status ltr_dataset_view_cols(const ltr_dataset* data, size_t view, size_t* cols);
/* Copies view `view` (rows x cols) into buf, row-major. */
LTR_API ltr_status ltr_dataset_view(const ltr_dataset* data, size_t view, double* buf, size_t len);
/* Copies the targets (rows x n_y) into buf, row-major. */
LTR_API ltr_status ltr_dataset_targets(const ltr_dataset* data, double* buf, size_t len);
LTR_API void ltr_dataset_free(ltr_dataset* data);

/* ---- synthetic data ---- */

/* Random homogeneous polynomial with standard-normal factors and scales. */
LTR_API ltr_status ltr_generate_model(size_t n, size_t degree, size_t rank, uint64_t seed, ltr_model** out);
LTR_API ltr_status ltr_sample_dataset(const ltr_model* model, size_t m, double noise, uint64_t seed,
                                      ltr_dataset** out);
/* name is one of "xy", "sq_diff", "diff_sq". */
LTR_API ltr_status ltr_quadratic_dataset(const char* name, size_t m, uint64_t seed, ltr_dataset** out);

/* ---- models ---- */

/* config_json holds training fields (degree, rank, mode, ...); NULL or "{}"
   selects defaults. report_json may be NULL. */
LTR_API ltr_status ltr_fit(const ltr_dataset* data, const char* config_json, ltr_model** out, char** report_json);
/* x is m x n row-major raw input (before homogenization); out receives
   m x n_y predictions. Logistic models yield probabilities. */
LTR_API ltr_status ltr_model_predict(const ltr_model* model, const double* x, size_t m, size_t n, double* out,
                                     size_t out_len);
/* Predictions for every row of a (possibly multi-view) dataset. */
LTR_API ltr_status ltr_model_predict_dataset(const ltr_model* model, const ltr_dataset* data, double* out,
                                             size_t out_len);
/* Raw input columns the model expects in a single-view call. */
LTR_API ltr_status ltr_model_shape(const ltr_model* model, size_t* degree, size_t* rank, size_t* input_cols,
                                   size_t* n_y, int* homogenized, int* logistic);
LTR_API ltr_status ltr_model_load(const char* path, ltr_model** out);
LTR_API ltr_status ltr_model_save(const ltr_model* model, const char* path);
LTR_API ltr_status ltr_model_to_json(const ltr_model* model, char** json);
LTR_API ltr_status ltr_model_from_json(const char* json, ltr_model** out);
LTR_API void ltr_model_free(ltr_model* model);

/* ---- metrics ---- */

/* LTR_ERR_UNDEFINED when either input has zero variance. */
LTR_API ltr_status ltr_pearson(const double* y, const double* yhat, size_t len, double* out);
LTR_API ltr_status ltr_rmse(const double* y, const double* yhat, size_t len, double* out);
/* Binary row-major matrices. */
LTR_API ltr_status ltr_f1_multilabel(const double* truth, const double* pred, size_t rows, size_t cols, double* out);
LTR_API ltr_status ltr_accuracy(const double* truth, const double* pred, size_t rows, size_t cols, double* out);
/* layer_outputs is n_layers x m row-major. */
LTR_API ltr_status ltr_correlation_ratio(const double* layer_outputs, size_t n_layers, size_t m, double* out);

/* ---- files ---- */

/* Reads a headered numeric CSV. With a prefix such as "x", only columns
   named prefix1, prefix2, ... are returned; NULL selects every column.
   *values is row-major and released with ltr_buffer_free. A zero-byte file
   yields rows = cols = 0. */
LTR_API ltr_status ltr_csv_read(const char* path, const char* prefix, double** values, size_t* rows, size_t* cols);
/* Writes a headered CSV atomically, numbers at round-trip precision. */
LTR_API ltr_status ltr_csv_write(const char* path, const char* const* header, size_t cols, const double* values,
                                 size_t rows);
/* Writes text atomically (temporary file + rename). */
LTR_API ltr_status ltr_write_text(const char* path, const char* text);
LTR_API void ltr_buffer_free(double* values);

/* ---- commands ---- */

/* options_json may be NULL. Recognized keys: degrees, outputs, rows, rank, n,
   step, tolerance, seed, corrupt ("lambda" | "P" | "Q"). Returns
   LTR_ERR_CHECK_FAILED when any group exceeds the tolerance; the report is
   written either way. */
LTR_API ltr_status ltr_gradcheck(const char* options_json, char** report_json);
/* Runs a sweep; csv receives the tidy table, plot_json the per-learner series. */
LTR_API ltr_status ltr_benchmark(const char* config_json, char** csv, char** plot_json);

#ifdef __cplusplus
}
#endif

#endif /* LTR_LTR_H */
