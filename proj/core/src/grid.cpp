#include "vespec/grid.hpp"

#include <stdexcept>

namespace vespec {

Grid::Grid(int n, double length) : n_(n), length_(length) {
    if (n < 4 || n % 2 != 0)
        throw std::invalid_argument("grid size must be even and >= 4");
    if (!(length > 0.0))
        throw std::invalid_argument("box length must be positive");
}

}  // namespace vespec
