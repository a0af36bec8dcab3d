#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "hjlab/dp.hpp"

namespace hjlab {

struct GridFunction {
  std::vector<double> nodes;
  std::vector<double> values;

  // Throws ConfigError unless the lengths agree and every value is finite.
  void validate() const;
  std::size_t size() const { return nodes.size(); }
};

// One source row of a kernel: finite entries for targets [first, first + values.size()).
// Targets outside that range are absent (+inf).
struct KernelRow {
  std::size_t first = 0;
  std::vector<double> values;

  bool empty() const { return values.empty(); }
  std::size_t last() const { return first + values.size() - 1; }
  bool contains(std::size_t j) const { return j >= first && j < first + values.size(); }
};

// Min-plus action kernel A_{t1,t2}(y_i, x_j), stored by source row.
class Kernel {
 public:
  Kernel(std::vector<double> sources, std::vector<double> targets, double t1, double t2,
         std::vector<KernelRow> rows);

  const std::vector<double>& source_nodes() const { return sources_; }
  const std::vector<double>& target_nodes() const { return targets_; }
  double t1() const { return t1_; }
  double t2() const { return t2_; }
  double duration() const { return t2_ - t1_; }
  const KernelRow& row(std::size_t i) const { return rows_[i]; }
  std::size_t num_sources() const { return sources_.size(); }
  std::size_t num_targets() const { return targets_.size(); }

  std::optional<double> at(std::size_t i, std::size_t j) const;
  std::size_t finite_entries() const;

 private:
  std::vector<double> sources_;
  std::vector<double> targets_;
  double t1_;
  double t2_;
  std::vector<KernelRow> rows_;
};

// A_{t1,t2} on the nodes of `grid` (any window is ignored), one DP pass per
// source with data 0 at the source and +inf elsewhere. Rows run in parallel
// when exec is Parallel.
Kernel kernel(const PotentialField& U, const GridSpec& grid, const ModelParams& p,
              Execution exec = Execution::Parallel);

// 0 on the diagonal and absent elsewhere; the neutral element of composition.
Kernel identity_kernel(const std::vector<double>& nodes, double t);

struct ApplyResult {
  GridFunction result;
  std::vector<std::size_t> argmin;  // source index of the minimum per target
};

// (T S)(x_j) = min_i A(y_i, x_j) + S(y_i). Ties go to the smaller source index.
// Throws ConfigError on a node mismatch and DomainError if some target has no
// finite entry.
ApplyResult minplus_apply(const Kernel& kern, const GridFunction& S);

// Tropical product: (k12 k23)(y, x) = min_z k12(y, z) + k23(z, x).
Kernel minplus_compose(const Kernel& k12, const Kernel& k23, Execution exec = Execution::Parallel);

struct FlowDefect {
  double sup = 0.0;               // max |compose(k12, k23) - k13| over entries finite in both
  std::size_t compared = 0;
  std::size_t pattern_mismatch = 0;  // entries finite in exactly one of the two
};

FlowDefect flow_defect(const Kernel& k13, const Kernel& k12, const Kernel& k23);

struct BoundsDefect {
  double lower = 0.0;  // max of (jensen - C tau) - A, clipped at 0
  double upper = 0.0;  // max of A - jensen, clipped at 0
};

// Violations of  jensen(|x-y|, tau) - C tau <= A(y, x) <= jensen(|x-y|, tau).
BoundsDefect kernel_bounds_defect(const Kernel& kern, const ModelParams& p);

// Largest difference quotient |A(y, x_{j+1}) - A(y, x_j)| / (x_{j+1} - x_j) over finite pairs.
double kernel_local_slope(const Kernel& kern);

// max over finite entries of S(x) - S(y) - A(y, x) - L tau; <= 0 means S is dominated.
// The kernel must be square with nodes equal to those of S.
double domination_defect(const GridFunction& S, const Kernel& kern, double L);

// max over node pairs of |S(x) - S(y)| / (|x - y| + 1).
double lipschitz_in_large_constant(const GridFunction& S);

// Entrywise min{A(y, x), K (|x - y| + 1)}; the result has every entry finite.
Kernel truncated_kernel(const Kernel& kern, double K);

// CSV "y,x,A" for finite entries, and "x,S"; 17 significant digits.
void write_kernel_csv(std::ostream& os, const Kernel& kern);
void write_grid_function_csv(std::ostream& os, const GridFunction& S);
GridFunction read_grid_function_csv(std::istream& is);

}  // namespace hjlab
