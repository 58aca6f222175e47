#pragma once

#include <functional>
#include <vector>

namespace strips {

/// Gauss-Legendre rules on [-1, 1], cached per node count.
namespace gauss_legendre {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes and weights for an n-point rule (1 <= n <= 256).  Thread-safe.
const Rule& rule(int n);

}  // namespace gauss_legendre

/// One-dimensional composite Gauss-Legendre quadrature over panels given by
/// consecutive breakpoints.
double integrate_panels(const std::vector<double>& breaks, int nodes_per_panel,
                        const std::function<double(double)>& f);

/// Flattened composite rule: all nodes/weights over the given panels.
void panel_nodes(const std::vector<double>& breaks, int nodes_per_panel,
                 std::vector<double>& nodes, std::vector<double>& weights);

/// Uniform subdivision of [lo, hi] so that every panel is at most max_width
/// wide.  Returns the breakpoints (at least {lo, hi}).
std::vector<double> uniform_breaks(double lo, double hi, double max_width);

}  // namespace strips
