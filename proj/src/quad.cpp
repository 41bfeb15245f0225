#include "aircoh/quad.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace aircoh::quad {

NodeSet composite_gauss_legendre(const Interval& dom, std::size_t panels) {
  if (panels == 0) throw DomainError("composite_gauss_legendre: need at least one panel");
  using GL = boost::math::quadrature::gauss<double, kPanelOrder>;
  const auto& xs = GL::abscissa();  // non-negative half, ascending
  const auto& ws = GL::weights();

  NodeSet out;
  out.nodes.reserve(panels * kPanelOrder);
  out.weights.reserve(panels * kPanelOrder);
  const double step = dom.width() / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = dom.lo() + step * static_cast<double>(p);
    const double b = (p + 1 == panels) ? dom.hi() : dom.lo() + step * static_cast<double>(p + 1);
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    // kPanelOrder is even: no centre node.
    for (std::size_t i = xs.size(); i-- > 0;) {
      out.nodes.push_back(c - h * xs[i]);
      out.weights.push_back(h * ws[i]);
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      out.nodes.push_back(c + h * xs[i]);
      out.weights.push_back(h * ws[i]);
    }
  }
  return out;
}

}  // namespace aircoh::quad
