#include "specband/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specband/special.hpp"

namespace specband {

Region::Region(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    const Interval& iv = intervals_[k];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw std::invalid_argument("region: non-finite bound");
    if (iv.lo < 0.0) throw std::invalid_argument("region: negative lower bound");
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("region: interval with lo >= hi");
    if (k > 0 && intervals_[k - 1].hi > iv.lo) throw std::invalid_argument("region: overlapping intervals");
  }
}

Region Region::interval(double lo, double hi) { return Region({{lo, hi}}); }

bool Region::contains(double x) const {
  for (const Interval& iv : intervals_)
    if (iv.lo <= x && x < iv.hi) return true;
  return false;
}

Generator Generator::gaussian(double center, double width) {
  if (!std::isfinite(center) || !(width > 0.0) || !std::isfinite(width))
    throw std::invalid_argument("gaussian: width must be positive and finite");
  Generator g;
  g.kind_ = Kind::Gaussian;
  g.p0_ = center;
  g.p1_ = width;
  return g;
}

Generator Generator::bump(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || !(lo < hi))
    throw std::invalid_argument("bump: support must satisfy 0 <= lo < hi");
  Generator g;
  g.kind_ = Kind::Bump;
  g.p0_ = lo;
  g.p1_ = hi;
  return g;
}

Generator Generator::indicator(Region region) {
  Generator g;
  g.kind_ = Kind::Indicator;
  g.region_ = std::move(region);
  return g;
}

Generator Generator::transformed(const Generator& inner, const KernelSpec& spec) {
  Generator g;
  g.kind_ = Kind::Transformed;
  g.inner_ = std::make_shared<const Generator>(inner);
  g.spec_ = spec;
  return g;
}

std::string Generator::family() const {
  switch (kind_) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Bump: return "bump";
    case Kind::Indicator: return "indicator";
    case Kind::Transformed: return "transformed_" + inner_->family();
  }
  return "unknown";
}

std::vector<Interval> Generator::support() const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double lo = std::max(0.0, p0_ - 12.0 * p1_);
      const double hi = std::max(lo, p0_ + 12.0 * p1_);
      if (hi <= lo) return {};
      return {{lo, hi}};
    }
    case Kind::Bump: return {{p0_, p1_}};
    case Kind::Indicator: return region_.intervals();
    case Kind::Transformed: return {{0.0, std::numeric_limits<double>::infinity()}};
  }
  return {};
}

double Generator::operator()(double x) const {
  switch (kind_) {
    case Kind::Gaussian: {
      const double t = (x - p0_) / p1_;
      return std::exp(-0.5 * t * t);
    }
    case Kind::Bump: {
      const double t = (2.0 * x - p0_ - p1_) / (p1_ - p0_);
      if (std::abs(t) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - t * t));
    }
    case Kind::Indicator: return region_.contains(x) ? 1.0 : 0.0;
    case Kind::Transformed: {
      const GaussLegendre& gl = gauss_legendre(20);
      double total = 0.0;
      for (const Interval& piece : inner_->support()) {
        const double len = piece.hi - piece.lo;
        const int panels = std::max(64, static_cast<int>(std::ceil(len * x / 1.5)));
        const double h = len / panels;
        for (int k = 0; k < panels; ++k) {
          const double mid = piece.lo + (k + 0.5) * h;
          double acc = 0.0;
          for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double t = mid + 0.5 * h * gl.nodes[q];
            if (t <= 0.0) continue;
            acc += gl.weights[q] * (*inner_)(t) * kernel_value(spec_, t, x) * measure_density(spec_, t);
          }
          total += 0.5 * h * acc;
        }
      }
      return total;
    }
  }
  return 0.0;
}

}  // namespace specband
