#include <cmath>
#include <sstream>

#include "coderet/hmlcr.hpp"

namespace coderet {
namespace {

bool finite(const LossBreakdown& l) { return std::isfinite(l.total); }

std::string describe_eta(double eta) {
  std::ostringstream s;
  s << eta;
  return s.str();
}

}  // namespace

Model train(const TrainingData& data, const Hyperparams& hyper) {
  data.validate();
  hyper.validate(static_cast<std::size_t>(data.x.rows()), static_cast<std::size_t>(data.y.rows()));

  auto init = cfa_init(data.x, data.y, hyper.k, hyper.seed);
  Model model;
  model.hyper = hyper;
  model.warnings = std::move(init.warnings);
  model.u = std::move(init.u);
  model.v = std::move(init.v);
  model.initial = total_loss(model.u, model.v, data, hyper);
  if (!finite(model.initial)) throw_runtime("initial loss is not finite; check the input matrices");

  double eta = hyper.eta;
  LossBreakdown previous = model.initial;
  for (std::size_t iter = 1; iter <= hyper.max_iter; ++iter) {
    Matrix u = model.u;
    Matrix v = model.v;
    LossBreakdown current;
    for (int attempt = 0;; ++attempt) {
      u = model.u - eta * grad_u(model.u, model.v, data, hyper);
      v = model.v - eta * grad_v(u, model.v, data, hyper);
      current = total_loss(u, v, data, hyper);
      if (!hyper.backtracking || (finite(current) && current.total <= previous.total) || attempt >= 40)
        break;
      eta *= 0.5;
    }
    if (!finite(current)) {
      throw_runtime("training diverged at iteration " + std::to_string(iter) +
                    " (loss is not finite); reduce the learning rate eta (currently " +
                    describe_eta(eta) + ")");
    }
    model.u = std::move(u);
    model.v = std::move(v);
    model.trace.push_back(current);

    const double change = std::abs(current.total - previous.total) / std::max(previous.total, 1.0);
    previous = current;
    if (change < hyper.tol) {
      model.converged = true;
      break;
    }
  }
  model.final_eta = eta;
  return model;
}

Model train_cfa_plus_cr(const TrainingData& data, const Hyperparams& hyper) {
  Hyperparams h = hyper;
  h.lambda2 = 0.0;
  return train(data, h);
}

double find_descent_step(const TrainingData& data, const Hyperparams& hyper, double start,
                         int max_halvings) {
  data.validate();
  const auto init = cfa_init(data.x, data.y, hyper.k, hyper.seed);
  const double before = total_loss(init.u, init.v, data, hyper).total;
  double eta = start;
  for (int i = 0; i <= max_halvings; ++i, eta *= 0.5) {
    const Matrix u = init.u - eta * grad_u(init.u, init.v, data, hyper);
    const Matrix v = init.v - eta * grad_v(u, init.v, data, hyper);
    const double after = total_loss(u, v, data, hyper).total;
    if (std::isfinite(after) && after < before) return eta;
  }
  throw_runtime("no learning rate in the halving search decreases the loss");
}

}  // namespace coderet
