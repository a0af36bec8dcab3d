#include "hjlab/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hjlab/errors.hpp"

namespace hjlab {

void GridFunction::validate() const {
  if (nodes.size() != values.size()) throw ConfigError("GridFunction: nodes and values differ in length");
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("GridFunction: values must be finite");
  }
}

Kernel::Kernel(std::vector<double> sources, std::vector<double> targets, double t1, double t2,
               std::vector<KernelRow> rows)
    : sources_(std::move(sources)), targets_(std::move(targets)), t1_(t1), t2_(t2), rows_(std::move(rows)) {
  if (rows_.size() != sources_.size()) throw ConfigError("Kernel: one row per source required");
  if (!(t2_ >= t1_)) throw ConfigError("Kernel: t2 < t1");
  for (const auto& r : rows_) {
    if (!r.empty() && r.last() >= targets_.size()) throw ConfigError("Kernel: row exceeds targets");
    for (double v : r.values) {
      if (!std::isfinite(v)) throw ConfigError("Kernel: stored entries must be finite");
    }
  }
}

std::optional<double> Kernel::at(std::size_t i, std::size_t j) const {
  const KernelRow& r = rows_[i];
  if (!r.contains(j)) return std::nullopt;
  return r.values[j - r.first];
}

std::size_t Kernel::finite_entries() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.values.size();
  return n;
}

namespace {

std::vector<double> grid_nodes(const GridSpec& grid) {
  std::vector<double> x(grid.num_cells());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = grid.x(i);
  return x;
}

KernelRow row_from_values(const std::vector<double>& v) {
  KernelRow r;
  std::size_t a = v.size(), b = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != kInf) {
      a = std::min(a, i);
      b = i;
    }
  }
  if (a == v.size()) return r;
  r.first = a;
  r.values.assign(v.begin() + static_cast<std::ptrdiff_t>(a), v.begin() + static_cast<std::ptrdiff_t>(b) + 1);
  if (std::find(r.values.begin(), r.values.end(), kInf) != r.values.end()) {
    throw DomainError("kernel row has an unreachable gap");
  }
  return r;
}

}  // namespace

Kernel kernel(const PotentialField& U, const GridSpec& grid, const ModelParams& p, Execution exec) {
  GridSpec g = grid;
  g.window = nullptr;
  g.validate();
  const std::size_t n = g.num_cells();
  std::vector<KernelRow> rows(n);
  const bool parallel = exec == Execution::Parallel;
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(n);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < nn; ++i) {
    std::vector<double> init(n, kInf);
    init[static_cast<std::size_t>(i)] = 0.0;
    rows[static_cast<std::size_t>(i)] = row_from_values(propagate(U, g, init, p, Execution::Serial));
  }
  auto nodes = grid_nodes(g);
  return Kernel(nodes, nodes, g.t1, g.t2, std::move(rows));
}

Kernel identity_kernel(const std::vector<double>& nodes, double t) {
  std::vector<KernelRow> rows(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) rows[i] = KernelRow{i, {0.0}};
  return Kernel(nodes, nodes, t, t, std::move(rows));
}

ApplyResult minplus_apply(const Kernel& kern, const GridFunction& S) {
  S.validate();
  if (S.nodes != kern.source_nodes()) throw ConfigError("minplus_apply: S is not on the kernel's source nodes");
  const std::size_t nt = kern.num_targets();
  std::vector<double> best(nt, kInf);
  std::vector<std::size_t> arg(nt, 0);
  for (std::size_t i = 0; i < kern.num_sources(); ++i) {
    const KernelRow& r = kern.row(i);
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      const double c = r.values[m] + S.values[i];
      const std::size_t j = r.first + m;
      if (c < best[j]) {
        best[j] = c;
        arg[j] = i;
      }
    }
  }
  for (double v : best) {
    if (v == kInf) throw DomainError("minplus_apply: some target has no finite kernel entry");
  }
  return ApplyResult{GridFunction{kern.target_nodes(), std::move(best)}, std::move(arg)};
}

Kernel minplus_compose(const Kernel& k12, const Kernel& k23, Execution exec) {
  if (k12.target_nodes() != k23.source_nodes()) throw ConfigError("minplus_compose: node mismatch");
  const double tol = 1e-12 * std::max({1.0, std::abs(k12.t2()), std::abs(k23.t1())});
  if (std::abs(k12.t2() - k23.t1()) > tol) throw ConfigError("minplus_compose: interval mismatch");

  const std::size_t ns = k12.num_sources();
  const std::size_t nt = k23.num_targets();
  std::vector<KernelRow> rows(ns);
  const bool parallel = exec == Execution::Parallel;
  const std::ptrdiff_t nn = static_cast<std::ptrdiff_t>(ns);

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
    const KernelRow& a = k12.row(static_cast<std::size_t>(ii));
    std::vector<double> acc(nt, kInf);
    for (std::size_t m = 0; m < a.values.size(); ++m) {
      const KernelRow& b = k23.row(a.first + m);
      const double base = a.values[m];
      for (std::size_t q = 0; q < b.values.size(); ++q) {
        const double c = base + b.values[q];
        double& dst = acc[b.first + q];
        if (c < dst) dst = c;
      }
    }
    rows[static_cast<std::size_t>(ii)] = row_from_values(acc);
  }
  return Kernel(k12.source_nodes(), k23.target_nodes(), k12.t1(), k23.t2(), std::move(rows));
}

FlowDefect flow_defect(const Kernel& k13, const Kernel& k12, const Kernel& k23) {
  const Kernel comp = minplus_compose(k12, k23);
  if (comp.source_nodes() != k13.source_nodes() || comp.target_nodes() != k13.target_nodes()) {
    throw ConfigError("flow_defect: node mismatch");
  }
  const double tol = 1e-12 * std::max({1.0, std::abs(k13.t1()), std::abs(k13.t2())});
  if (std::abs(comp.t1() - k13.t1()) > tol || std::abs(comp.t2() - k13.t2()) > tol) {
    throw ConfigError("flow_defect: interval mismatch");
  }
  FlowDefect d;
  for (std::size_t i = 0; i < k13.num_sources(); ++i) {
    const KernelRow& a = comp.row(i);
    const KernelRow& b = k13.row(i);
    if (a.empty() && b.empty()) continue;
    const std::size_t lo = std::min(a.empty() ? b.first : a.first, b.empty() ? a.first : b.first);
    const std::size_t hi = std::max(a.empty() ? b.last() : a.last(), b.empty() ? a.last() : b.last());
    for (std::size_t j = lo; j <= hi; ++j) {
      const bool fa = a.contains(j), fb = b.contains(j);
      if (fa && fb) {
        d.sup = std::max(d.sup, std::abs(a.values[j - a.first] - b.values[j - b.first]));
        ++d.compared;
      } else if (fa != fb) {
        ++d.pattern_mismatch;
      }
    }
  }
  return d;
}

BoundsDefect kernel_bounds_defect(const Kernel& kern, const ModelParams& p) {
  const double tau = kern.duration();
  BoundsDefect d;
  for (std::size_t i = 0; i < kern.num_sources(); ++i) {
    const KernelRow& r = kern.row(i);
    const double y = kern.source_nodes()[i];
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      const double x = kern.target_nodes()[r.first + m];
      const double j = jensen_lower_bound(x - y, tau, p);
      d.lower = std::max(d.lower, (j - p.C() * tau) - r.values[m]);
      d.upper = std::max(d.upper, r.values[m] - j);
    }
  }
  return d;
}

double kernel_local_slope(const Kernel& kern) {
  const auto& x = kern.target_nodes();
  double s = 0.0;
  for (std::size_t i = 0; i < kern.num_sources(); ++i) {
    const KernelRow& r = kern.row(i);
    for (std::size_t m = 0; m + 1 < r.values.size(); ++m) {
      const std::size_t j = r.first + m;
      s = std::max(s, std::abs(r.values[m + 1] - r.values[m]) / (x[j + 1] - x[j]));
    }
  }
  return s;
}

double domination_defect(const GridFunction& S, const Kernel& kern, double L) {
  S.validate();
  if (S.nodes != kern.source_nodes() || S.nodes != kern.target_nodes()) {
    throw ConfigError("domination_defect: S must live on the kernel's nodes");
  }
  const double lt = L * kern.duration();
  double d = -kInf;
  for (std::size_t i = 0; i < kern.num_sources(); ++i) {
    const KernelRow& r = kern.row(i);
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      const std::size_t j = r.first + m;
      d = std::max(d, S.values[j] - S.values[i] - r.values[m] - lt);
    }
  }
  return d;
}

double lipschitz_in_large_constant(const GridFunction& S) {
  S.validate();
  if (S.size() < 2) throw ConfigError("lipschitz_in_large_constant needs at least two nodes");
  double k = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) {
      k = std::max(k, std::abs(S.values[j] - S.values[i]) / (std::abs(S.nodes[j] - S.nodes[i]) + 1.0));
    }
  }
  return k;
}

Kernel truncated_kernel(const Kernel& kern, double K) {
  if (!(K > 0.0)) throw ConfigError("truncated_kernel: K must be > 0");
  const auto& ys = kern.source_nodes();
  const auto& xs = kern.target_nodes();
  std::vector<KernelRow> rows(kern.num_sources());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    KernelRow& out = rows[i];
    out.first = 0;
    out.values.resize(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const double cap = K * (std::abs(xs[j] - ys[i]) + 1.0);
      const auto a = kern.at(i, j);
      out.values[j] = a ? std::min(*a, cap) : cap;
    }
  }
  return Kernel(ys, xs, kern.t1(), kern.t2(), std::move(rows));
}

void write_kernel_csv(std::ostream& os, const Kernel& kern) {
  os << "y,x,A\n" << std::setprecision(17);
  for (std::size_t i = 0; i < kern.num_sources(); ++i) {
    const KernelRow& r = kern.row(i);
    for (std::size_t m = 0; m < r.values.size(); ++m) {
      os << kern.source_nodes()[i] << ',' << kern.target_nodes()[r.first + m] << ',' << r.values[m] << '\n';
    }
  }
}

void write_grid_function_csv(std::ostream& os, const GridFunction& S) {
  os << "x,S\n" << std::setprecision(17);
  for (std::size_t i = 0; i < S.size(); ++i) os << S.nodes[i] << ',' << S.values[i] << '\n';
}

GridFunction read_grid_function_csv(std::istream& is) {
  GridFunction S;
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("grid function CSV is empty");
  if (line.rfind("x,S", 0) != 0) throw ConfigError("grid function CSV must start with header x,S");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("grid function CSV: malformed line '" + line + "'");
    try {
      S.nodes.push_back(std::stod(line.substr(0, comma)));
      S.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw ConfigError("grid function CSV: malformed line '" + line + "'");
    }
  }
  S.validate();
  return S;
}

}  // namespace hjlab
