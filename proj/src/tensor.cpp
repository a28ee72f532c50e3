#include "octupolar/tensor.hpp"

namespace octo {

YoungDimensions young_dimensions(const YoungDiagram& d, int n) {
  if (d.rows.empty()) throw std::invalid_argument("empty Young diagram");
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  for (std::size_t a = 0; a < d.rows.size(); ++a) {
    if (d.rows[a] < 1) throw std::invalid_argument("Young diagram rows must be positive");
    if (a > 0 && d.rows[a] > d.rows[a - 1]) throw std::invalid_argument("Young diagram rows must be non-increasing");
  }
  long long boxes = 0;
  for (int r : d.rows) boxes += r;

  // Hook of box (a,b): arm + leg + 1. Content factor n + b - a.
  long long hooks = 1, contents = 1;
  for (int a = 0; a < static_cast<int>(d.rows.size()); ++a)
    for (int b = 0; b < d.rows[a]; ++b) {
      int leg = 0;
      for (int c = a + 1; c < static_cast<int>(d.rows.size()); ++c)
        if (d.rows[c] > b) ++leg;
      hooks *= (d.rows[a] - b - 1) + leg + 1;
      contents *= n + b - a;
    }
  long long fact = 1;
  for (long long k = 2; k <= boxes; ++k) fact *= k;
  return {fact / hooks, contents / hooks};
}

}  // namespace octo
