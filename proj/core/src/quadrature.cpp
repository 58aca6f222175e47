#include "strips/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace strips {
namespace gauss_legendre {

namespace {

double legendre(double x, int n, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    dp = 0.0;
    return 1.0;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  dp = n * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

Rule build(int n) {
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (4.0 * (i + 1) - 1.0) / (4.0 * n + 2.0)) *
               (1.0 - 1.0 / (8.0 * n * n) + 1.0 / (8.0 * double(n) * n * n));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = legendre(x, n, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, n, dp);
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

}  // namespace

const Rule& rule(int n) {
  if (n < 1 || n > 256) {
    throw std::invalid_argument("gauss_legendre::rule: n out of range");
  }
  static std::map<int, Rule> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, build(n)).first;
  }
  return it->second;
}

}  // namespace gauss_legendre

double integrate_panels(const std::vector<double>& breaks, int nodes_per_panel,
                        const std::function<double(double)>& f) {
  const auto& r = gauss_legendre::rule(nodes_per_panel);
  double acc = 0.0;
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    double panel = 0.0;
    for (size_t i = 0; i < r.nodes.size(); ++i) {
      panel += r.weights[i] * f(mid + half * r.nodes[i]);
    }
    acc += half * panel;
  }
  return acc;
}

void panel_nodes(const std::vector<double>& breaks, int nodes_per_panel,
                 std::vector<double>& nodes, std::vector<double>& weights) {
  const auto& r = gauss_legendre::rule(nodes_per_panel);
  nodes.clear();
  weights.clear();
  if (breaks.size() < 2) return;
  nodes.reserve((breaks.size() - 1) * r.nodes.size());
  weights.reserve((breaks.size() - 1) * r.nodes.size());
  for (size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    for (size_t i = 0; i < r.nodes.size(); ++i) {
      nodes.push_back(mid + half * r.nodes[i]);
      weights.push_back(half * r.weights[i]);
    }
  }
}

std::vector<double> uniform_breaks(double lo, double hi, double max_width) {
  if (!(hi > lo)) throw std::invalid_argument("uniform_breaks: hi must exceed lo");
  if (!(max_width > 0.0)) throw std::invalid_argument("uniform_breaks: bad width");
  const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_width)));
  std::vector<double> breaks(n + 1);
  for (int i = 0; i <= n; ++i) breaks[i] = lo + (hi - lo) * i / n;
  return breaks;
}

}  // namespace strips
