/*
 * Copyright 2026 LTR developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "ltr/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace ltr {

const char* to_string(ParamGroup g) {
  switch (g) {
    case ParamGroup::kLambda: return "lambda";
    case ParamGroup::kP: return "P";
    case ParamGroup::kQ: return "Q";
  }
  return "?";
}

double relative_error(double analytic, double numeric, double floor) {
  return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), floor});
}

namespace {

struct Instance {
  LtrModel model;
  std::vector<Matrix> views;
  Matrix Y;
  TrainConfig config;
};

Instance make_instance(const GradcheckOptions& o, Index degree, Index n_y, bool multi, Link link,
                       std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Index r, Index c, double sd) { return Matrix(Matrix::NullaryExpr(r, c, [&] { return sd * normal(rng); })); };

  Instance in;
  in.config.degree = degree;
  in.config.rank = o.rank;
  in.config.c_p = 0.3;
  in.config.c_q = 0.2;
  in.config.link = link;
  in.model.link = link;
  const Index n_views = multi ? degree : 1;
  for (Index v = 0; v < n_views; ++v) in.views.push_back(draw(o.rows, o.n + (multi ? v : 0), 1.0));
  for (Index d = 0; d < degree; ++d) {
    const Index w = view_for(in.views, d).cols();
    in.model.P.push_back(draw(o.rank, w, 1.0 / std::sqrt(static_cast<double>(w))));
  }
  in.model.Q = draw(o.rank, n_y, 1.0);
  in.model.lambda = draw(o.rank, 1, 1.0).col(0);
  if (link == Link::kLogistic) {
    std::bernoulli_distribution coin(0.5);
    in.Y = Matrix::NullaryExpr(o.rows, n_y, [&] { return coin(rng) ? 1.0 : 0.0; });
  } else {
    in.Y = draw(o.rows, n_y, 1.0);
  }
  return in;
}

// Central difference of the loss with respect to one parameter entry.
template <typename Getter>
double central_difference(Instance& in, double h, Getter&& entry) {
  double& x = entry(in.model);
  const double saved = x;
  x = saved + h;
  const double up = loss(in.model, in.views, in.Y, in.config);
  x = saved - h;
  const double down = loss(in.model, in.views, in.Y, in.config);
  x = saved;
  return (up - down) / (2.0 * h);
}

void compare(GradcheckEntry& e, double analytic, double numeric, double floor, std::string index) {
  const double err = relative_error(analytic, numeric, floor);
  if (!(err <= e.max_rel_error)) {  // also catches NaN
    e.max_rel_error = std::isnan(err) ? INFINITY : err;
    e.worst_index = std::move(index);
  }
}

}  // namespace

GradcheckReport run_gradcheck(const GradcheckOptions& o) {
  GradcheckReport report;
  std::mt19937_64 rng(o.seed);
  for (Index degree : o.degrees) {
    for (Index n_y : o.outputs) {
      for (bool multi : o.multi_view) {
        for (Link link : o.links) {
          Instance in = make_instance(o, degree, n_y, multi, link, rng);
          ParamGrads g = gradients(in.model, in.views, in.Y, in.config);
          if (o.corrupt == ParamGroup::kLambda) g.lambda = -g.lambda;
          if (o.corrupt == ParamGroup::kP) for (auto& p : g.P) p = -p;
          if (o.corrupt == ParamGroup::kQ) g.Q = -g.Q;

          const std::string shape = "n_d=" + std::to_string(degree) + " n_y=" + std::to_string(n_y) +
                                    (multi ? " multi-view" : " single-view") + " link=" + to_string(link);
          GradcheckEntry el, ep, eq;
          el.shape = ep.shape = eq.shape = shape;
          ep.group = ParamGroup::kP;
          eq.group = ParamGroup::kQ;

          for (Index t = 0; t < in.model.rank(); ++t) {
            const double num = central_difference(in, o.step, [t](LtrModel& m) -> double& { return m.lambda(t); });
            compare(el, g.lambda(t), num, o.floor, "lambda[" + std::to_string(t) + "]");
          }
          for (Index d = 0; d < in.model.degree(); ++d) {
            const auto du = static_cast<std::size_t>(d);
            for (Index t = 0; t < in.model.rank(); ++t)
              for (Index j = 0; j < in.model.P[du].cols(); ++j) {
                const double num =
                    central_difference(in, o.step, [=](LtrModel& m) -> double& { return m.P[du](t, j); });
                compare(ep, g.P[du](t, j), num, o.floor,
                        "P" + std::to_string(d + 1) + "[" + std::to_string(t) + "," + std::to_string(j) + "]");
              }
          }
          for (Index t = 0; t < in.model.rank(); ++t)
            for (Index k = 0; k < n_y; ++k) {
              const double num = central_difference(in, o.step, [=](LtrModel& m) -> double& { return m.Q(t, k); });
              compare(eq, g.Q(t, k), num, o.floor, "Q[" + std::to_string(t) + "," + std::to_string(k) + "]");
            }

          for (GradcheckEntry* e : {&el, &ep, &eq}) {
            e->passed = e->max_rel_error <= o.tolerance;
            report.passed = report.passed && e->passed;
            report.entries.push_back(*e);
          }
        }
      }
    }
  }
  return report;
}

}  // namespace ltr
