#include "oracle/oracle.hpp"

#include <cassert>

namespace oracle {

double simpson(const std::function<double(double)>& f, double a, double b,
               std::size_t panels) {
  assert(panels >= 2 && panels % 2 == 0);
  const double h = (b - a) / static_cast<double>(panels);
  double sum = 0.0, comp = 0.0;
  auto add = [&](double term) {
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };
  add(f(a));
  add(f(b));
  for (std::size_t i = 1; i < panels; ++i) {
    const double x = a + h * static_cast<double>(i);
    add((i % 2 == 1 ? 4.0 : 2.0) * f(x));
  }
  return sum * h / 3.0;
}

}  // namespace oracle
