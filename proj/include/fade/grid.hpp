#pragma once

#include <stdexcept>

namespace fade {

// Uniform 1D lattice x_i = a + i*h, 0 <= i <= cells, h = (b-a)/cells.
// knot() accepts ghost indices outside [0, cells]; nothing is stored for them.
struct Grid {
    double a = 0.0;
    double b = 1.0;
    int cells = 1; // M

    Grid() = default;
    Grid(double a_, double b_, int cells_) : a(a_), b(b_), cells(cells_) {
        if (!(b > a)) throw std::invalid_argument("grid: b must exceed a");
        if (cells < 1) throw std::invalid_argument("grid: need at least one cell");
    }

    double h() const { return (b - a) / cells; }
    double knot(int i) const { return a + i * h(); }
    int points() const { return cells + 1; }
    int interior() const { return cells - 1; }

    // The tridiagonal collocation matrix of the trigonometric family is
    // guaranteed strictly diagonally dominant only for spacings below 1.
    bool trig_dominance_spacing() const { return h() > 0.0 && h() < 1.0; }
};

struct Grid2 {
    Grid x;
    Grid y;
    int interior() const { return x.interior() * y.interior(); }
};

} // namespace fade
