#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "constellation/mub.hpp"

namespace constellation {

struct SearchConfig {
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iterations = 10000;
  double grad_tol = 1e-9;
  double success_threshold = 1e-8;
  int workers = 1;
  /// Stop at the first successful restart (by index). The outcome does not
  /// depend on the worker count either way.
  bool stop_on_success = true;

  /// Throws BadConfig on a violated bound.
  void validate() const;
};

enum class SearchStatus { Found, NotFound };

struct SearchResult {
  SearchStatus status = SearchStatus::NotFound;
  double best_defect = 0.0;
  /// Fixed sets first, then the optimized ones.
  MUConstellation best_configuration{1, {}};
  std::optional<int> found_at_restart;
  int best_restart = 0;
  /// Restarts that count towards the result (all of them, or up to and
  /// including the first success).
  int restarts_run = 0;
  std::uint64_t iterations_used = 0;
  double elapsed_seconds = 0.0;
  /// Final defect of each counted restart.
  std::vector<double> restart_defects;
  /// Best defect after each counted restart; non-increasing.
  std::vector<double> best_history;
};

/// Total MU defect of a set of fixed and free column blocks.
///
/// Each free block is the leading columns of exp(iH), H Hermitian with d^2
/// real parameters: the d diagonal entries, then the real and imaginary part
/// of each entry above the diagonal in row-major order. Only the listed
/// block pairs contribute to the cost.
class DefectObjective {
 public:
  /// First set fixed to identity columns; sizes follow the d-1 convention
  /// (a size of d-1 is completed to the full basis).
  static DefectObjective for_signature(int d, const std::vector<int>& sizes);
  /// Cost against every column of every fixed basis; k vectors either
  /// orthonormal (one unitary) or independent (one unitary each).
  static DefectObjective for_extension(const std::vector<Basis>& fixed, int k, bool orthonormal);

  int dim() const noexcept { return d_; }
  int parameter_count() const noexcept { return static_cast<int>(free_blocks_.size()) * d_ * d_; }

  double value(const Eigen::VectorXd& params) const;
  double value_and_gradient(const Eigen::VectorXd& params, Eigen::VectorXd& gradient) const;

  /// Fixed blocks followed by the free blocks at these parameters.
  MUConstellation configuration(const Eigen::VectorXd& params) const;
  /// Parameters drawn from the stream of (seed, restart), unit normal scale.
  Eigen::VectorXd initial_parameters(std::uint64_t seed, int restart) const;

  /// Unitary exp(iH) for one block of d^2 parameters.
  static CMatrix unitary(int d, const double* params);

 private:
  struct Block {
    bool free = false;
    int columns = 0;
    CMatrix fixed;  // fixed blocks only
  };

  int d_ = 0;
  std::vector<Block> blocks_;
  std::vector<int> free_blocks_;  // indices into blocks_
  std::vector<std::pair<int, int>> pairs_;
};

struct RestartOutcome {
  double defect = 0.0;
  std::uint64_t iterations = 0;
  Eigen::VectorXd params;
};

/// Gradient descent with backtracking (halving, sufficient decrease 1e-4).
/// Each line search starts from the Barzilai-Borwein step of the previous
/// iteration.
RestartOutcome minimize(const DefectObjective& objective, Eigen::VectorXd start, const SearchConfig& cfg);

/// Runs cfg.restarts independent minimizations of the objective.
SearchResult run_search(const DefectObjective& objective, const SearchConfig& cfg);

/// Search for an MU constellation with the given set sizes (1..d-1 each).
SearchResult search_constellation(const std::vector<int>& sizes, int d, const SearchConfig& cfg);

/// Search for k vectors MU to every column of the fixed bases.
SearchResult extend_search(const std::vector<Basis>& fixed, int k, bool orthonormal, const SearchConfig& cfg);

/// Keeps, for each requested size, the leading columns of a distinct set of
/// the configuration (largest sizes matched first). A size of d-1 keeps the
/// full basis. Throws BadSignature if the sizes do not fit.
MUConstellation restrict_configuration(const MUConstellation& c, const std::vector<int>& sizes);

}  // namespace constellation
