#include "constellation/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cmath>
#include <numeric>
#include <thread>

#include "constellation/error.hpp"
#include "constellation/random.hpp"

namespace constellation {

void SearchConfig::validate() const {
  if (restarts < 1) throw Error(ErrorCode::BadConfig, "restarts must be at least 1");
  if (max_iterations < 1) throw Error(ErrorCode::BadConfig, "max_iterations must be at least 1");
  if (!(grad_tol > 0.0)) throw Error(ErrorCode::BadConfig, "grad_tol must be positive");
  if (!(success_threshold > 0.0)) throw Error(ErrorCode::BadConfig, "success_threshold must be positive");
  if (workers < 1) throw Error(ErrorCode::BadConfig, "workers must be at least 1");
}

namespace {

struct BlockState {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd values;
  CMatrix unitary;
};

Eigen::MatrixXcd hermitian(int d, const double* p) {
  Eigen::MatrixXcd h(d, d);
  int idx = d;
  for (int j = 0; j < d; ++j) {
    h(j, j) = p[j];
    for (int k = j + 1; k < d; ++k) {
      const Complex z(p[idx], p[idx + 1]);
      idx += 2;
      h(j, k) = z;
      h(k, j) = std::conj(z);
    }
  }
  return h;
}

BlockState exponentiate(int d, const double* p) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian(d, p));
  BlockState s{solver.eigenvectors(), solver.eigenvalues(), {}};
  Eigen::VectorXcd phases(d);
  for (int j = 0; j < d; ++j) phases[j] = std::polar(1.0, s.values[j]);
  s.unitary = s.vectors * phases.asDiagonal() * s.vectors.adjoint();
  return s;
}

// d exp(iH) = V (F o (V^* dH V)) V^*, with F the divided differences of exp(i x).
Eigen::MatrixXcd divided_differences(const Eigen::VectorXd& lambda) {
  const int d = static_cast<int>(lambda.size());
  Eigen::MatrixXcd f(d, d);
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) {
      const double half = 0.5 * (lambda[j] - lambda[k]);
      const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
      f(j, k) = Complex(0.0, sinc) * std::polar(1.0, 0.5 * (lambda[j] + lambda[k]));
    }
  }
  return f;
}

}  // namespace

CMatrix DefectObjective::unitary(int d, const double* params) { return exponentiate(d, params).unitary; }

DefectObjective DefectObjective::for_signature(int d, const std::vector<int>& sizes) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");
  if (sizes.size() < 2) throw Error(ErrorCode::BadSignature, "need at least two sets");
  if (sizes.size() > static_cast<std::size_t>(d + 1)) throw Error(ErrorCode::BadSignature, "more than d+1 sets");
  for (int s : sizes) {
    if (s < 1 || s > d - 1) {
      throw Error(ErrorCode::BadSignature, "set size " + std::to_string(s) + " outside 1.." + std::to_string(d - 1));
    }
  }
  DefectObjective obj;
  obj.d_ = d;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int cols = sizes[i] == d - 1 ? d : sizes[i];
    Block b;
    b.columns = cols;
    if (i == 0) {
      b.fixed = CMatrix::Identity(d, d).leftCols(cols);
    } else {
      b.free = true;
      obj.free_blocks_.push_back(static_cast<int>(i));
    }
    obj.blocks_.push_back(std::move(b));
  }
  for (int i = 0; i < static_cast<int>(sizes.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(sizes.size()); ++j) obj.pairs_.emplace_back(i, j);
  }
  return obj;
}

DefectObjective DefectObjective::for_extension(const std::vector<Basis>& fixed, int k, bool orthonormal) {
  if (fixed.empty()) throw Error(ErrorCode::DimensionMismatch, "no fixed bases");
  const int d = fixed[0].dim();
  for (const Basis& b : fixed) {
    if (b.dim() != d) throw Error(ErrorCode::DimensionMismatch, "fixed bases differ in dimension");
  }
  if (k < 1 || k > d - 1) {
    throw Error(ErrorCode::BadCount, "vector count " + std::to_string(k) + " outside 1.." + std::to_string(d - 1));
  }
  DefectObjective obj;
  obj.d_ = d;
  for (const Basis& b : fixed) obj.blocks_.push_back({false, b.size(), b.columns()});
  const int n_fixed = static_cast<int>(obj.blocks_.size());
  const int n_free = orthonormal ? 1 : k;
  for (int f = 0; f < n_free; ++f) {
    obj.free_blocks_.push_back(static_cast<int>(obj.blocks_.size()));
    obj.blocks_.push_back({true, orthonormal ? k : 1, {}});
  }
  for (int i = 0; i < n_fixed; ++i) {
    for (int f : obj.free_blocks_) obj.pairs_.emplace_back(i, f);
  }
  return obj;
}

double DefectObjective::value(const Eigen::VectorXd& params) const {
  std::vector<CMatrix> sets(blocks_.size());
  for (std::size_t f = 0; f < free_blocks_.size(); ++f) {
    const int b = free_blocks_[f];
    sets[b] = unitary(d_, params.data() + f * d_ * d_).leftCols(blocks_[b].columns);
  }
  const double inv_d = 1.0 / d_;
  double cost = 0.0;
  for (auto [i, j] : pairs_) {
    const CMatrix& a = blocks_[i].free ? sets[i] : blocks_[i].fixed;
    const CMatrix& b = blocks_[j].free ? sets[j] : blocks_[j].fixed;
    cost += ((a.adjoint() * b).cwiseAbs2().array() - inv_d).square().sum();
  }
  return cost;
}

double DefectObjective::value_and_gradient(const Eigen::VectorXd& params, Eigen::VectorXd& gradient) const {
  const int d = d_;
  const int dd = d * d;
  std::vector<BlockState> states(free_blocks_.size());
  std::vector<CMatrix> sets(blocks_.size());
  std::vector<CMatrix> grads(blocks_.size());
  for (std::size_t f = 0; f < free_blocks_.size(); ++f) {
    const int b = free_blocks_[f];
    states[f] = exponentiate(d, params.data() + f * dd);
    sets[b] = states[f].unitary.leftCols(blocks_[b].columns);
    grads[b] = CMatrix::Zero(d, blocks_[b].columns);
  }
  const double inv_d = 1.0 / d;
  double cost = 0.0;
  for (auto [i, j] : pairs_) {
    const CMatrix& a = blocks_[i].free ? sets[i] : blocks_[i].fixed;
    const CMatrix& b = blocks_[j].free ? sets[j] : blocks_[j].fixed;
    const CMatrix overlaps = a.adjoint() * b;
    const Eigen::ArrayXXd excess = overlaps.cwiseAbs2().array() - inv_d;
    cost += excess.square().sum();
    // d/d conj(v) of (|u^* v|^2 - 1/d)^2 = 2 (|u^* v|^2 - 1/d) (u^* v) u
    const CMatrix weighted = (2.0 * excess).cast<Complex>().matrix().cwiseProduct(overlaps);
    if (blocks_[j].free) grads[j] += a * weighted;
    if (blocks_[i].free) grads[i] += b * weighted.adjoint();
  }

  gradient.resize(params.size());
  for (std::size_t f = 0; f < free_blocks_.size(); ++f) {
    const int b = free_blocks_[f];
    const BlockState& s = states[f];
    CMatrix g = CMatrix::Zero(d, d);
    g.leftCols(blocks_[b].columns) = grads[b];
    const CMatrix inner = (s.vectors.adjoint() * g * s.vectors).cwiseProduct(divided_differences(s.values).conjugate());
    const CMatrix k = s.vectors * inner * s.vectors.adjoint();
    double* out = gradient.data() + f * dd;
    int idx = d;
    for (int j = 0; j < d; ++j) {
      out[j] = 2.0 * k(j, j).real();
      for (int l = j + 1; l < d; ++l) {
        out[idx] = 2.0 * (k(j, l).real() + k(l, j).real());
        out[idx + 1] = 2.0 * (k(j, l).imag() - k(l, j).imag());
        idx += 2;
      }
    }
  }
  return cost;
}

MUConstellation DefectObjective::configuration(const Eigen::VectorXd& params) const {
  std::vector<Basis> bases;
  int f = 0;
  for (const Block& b : blocks_) {
    if (b.free) {
      bases.emplace_back(unitary(d_, params.data() + f * d_ * d_).leftCols(b.columns));
      ++f;
    } else {
      bases.emplace_back(b.fixed);
    }
  }
  return MUConstellation(d_, std::move(bases));
}

Eigen::VectorXd DefectObjective::initial_parameters(std::uint64_t seed, int restart) const {
  NormalStream rng(stream_seed(seed, static_cast<std::uint64_t>(restart)));
  Eigen::VectorXd p(parameter_count());
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = rng.next();
  return p;
}

RestartOutcome minimize(const DefectObjective& objective, Eigen::VectorXd x, const SearchConfig& cfg) {
  constexpr double kSufficientDecrease = 1e-4;
  constexpr double kMinStep = 1e-16;
  constexpr double kMaxStep = 1e12;
  constexpr double kCostFloor = 1e-30;
  Eigen::VectorXd g, trial_g;
  double f = objective.value_and_gradient(x, g);
  double step = 1.0;
  std::uint64_t it = 0;
  while (it < static_cast<std::uint64_t>(cfg.max_iterations)) {
    const double g2 = g.squaredNorm();
    if (std::sqrt(g2) < cfg.grad_tol || f < kCostFloor) break;
    bool accepted = false;
    Eigen::VectorXd trial;
    while (step >= kMinStep) {
      trial = x - step * g;
      const double ft = objective.value_and_gradient(trial, trial_g);
      if (ft <= f - kSufficientDecrease * step * g2) {
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    ++it;
    // Barzilai-Borwein trial step for the next iteration; doubling when the
    // curvature estimate is unusable.
    const Eigen::VectorXd s = trial - x;
    const Eigen::VectorXd y = trial_g - g;
    const double sy = s.dot(y);
    const double yy = y.squaredNorm();
    step = sy > 0.0 && yy > 0.0 ? std::min(sy / yy, kMaxStep) : 2.0 * step;
    x = std::move(trial);
    std::swap(g, trial_g);
  }
  return {f, it, std::move(x)};
}

SearchResult run_search(const DefectObjective& objective, const SearchConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.restarts;
  std::vector<std::optional<RestartOutcome>> outcomes(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::atomic<int> first_success{INT_MAX};

  auto work = [&] {
    for (;;) {
      const int i = next++;
      if (i >= n) return;
      if (cfg.stop_on_success && i > first_success.load()) return;
      RestartOutcome out = minimize(objective, objective.initial_parameters(cfg.seed, i), cfg);
      const bool success = out.defect < cfg.success_threshold;
      outcomes[static_cast<std::size_t>(i)] = std::move(out);
      if (success) {
        int seen = first_success.load();
        while (i < seen && !first_success.compare_exchange_weak(seen, i)) {
        }
      }
    }
  };
  if (cfg.workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(work);
  }

  const int counted = (cfg.stop_on_success && first_success.load() < n) ? first_success.load() + 1 : n;
  SearchResult result;
  int best = -1;
  for (int i = 0; i < counted; ++i) {
    const RestartOutcome& o = *outcomes[static_cast<std::size_t>(i)];
    result.iterations_used += o.iterations;
    result.restart_defects.push_back(o.defect);
    if (best < 0 || o.defect < outcomes[static_cast<std::size_t>(best)]->defect) best = i;
    result.best_history.push_back(outcomes[static_cast<std::size_t>(best)]->defect);
    if (!result.found_at_restart && o.defect < cfg.success_threshold) result.found_at_restart = i;
  }
  const RestartOutcome& winner = *outcomes[static_cast<std::size_t>(best)];
  result.best_restart = best;
  result.best_defect = winner.defect;
  result.best_configuration = objective.configuration(winner.params);
  result.restarts_run = counted;
  result.status = winner.defect < cfg.success_threshold ? SearchStatus::Found : SearchStatus::NotFound;
  result.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SearchResult search_constellation(const std::vector<int>& sizes, int d, const SearchConfig& cfg) {
  return run_search(DefectObjective::for_signature(d, sizes), cfg);
}

SearchResult extend_search(const std::vector<Basis>& fixed, int k, bool orthonormal, const SearchConfig& cfg) {
  return run_search(DefectObjective::for_extension(fixed, k, orthonormal), cfg);
}

MUConstellation restrict_configuration(const MUConstellation& c, const std::vector<int>& sizes) {
  const int d = c.dim();
  auto effective = [d](int cols) { return std::min(cols, d - 1); };
  std::vector<int> target = sizes;
  std::sort(target.begin(), target.end(), std::greater<>());
  std::vector<int> source(c.bases().size());
  std::iota(source.begin(), source.end(), 0);
  std::stable_sort(source.begin(), source.end(), [&](int a, int b) {
    return effective(c.bases()[a].size()) > effective(c.bases()[b].size());
  });
  if (target.size() > source.size()) throw Error(ErrorCode::BadSignature, "more sets requested than available");
  std::vector<Basis> out;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const Basis& from = c.bases()[source[i]];
    if (target[i] < 1 || effective(from.size()) < target[i]) {
      throw Error(ErrorCode::BadSignature, "requested sizes are not dominated by the configuration");
    }
    const int cols = target[i] == d - 1 ? from.size() : target[i];
    out.emplace_back(from.columns().leftCols(cols));
  }
  return MUConstellation(d, std::move(out));
}

}  // namespace constellation
