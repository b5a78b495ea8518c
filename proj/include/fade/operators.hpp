#pragma once

#include "fade/dq_weights.hpp"
#include "fade/grid.hpp"
#include "fade/linalg.hpp"

#include <functional>
#include <vector>

namespace fade {

// Assembled spatial operator over interior unknowns. 2D unknowns are ordered
// x-fastest: index = (j-1)*(Mx-1) + (i-1) for interior (i,j).
// The weight-matrix columns that multiply boundary values are kept per axis so
// load vectors can fold Dirichlet data without widening the interior system.
class SpatialOperator {
public:
    struct AxisData {
        Grid grid;
        double kappa = 0.0; // advection coefficient
        double eps = 0.0;   // diffusivity (or fractional diffusivity)
        // First/second-order (or fractional) weight columns at the two
        // boundary grid points, restricted to interior collocation rows.
        std::vector<double> w1_left, w1_right;
        std::vector<double> w2_left, w2_right;
    };

    const DenseMatrix& interior() const { return interior_; }
    int dim() const { return interior_.rows(); }
    bool two_dimensional() const { return axes_.size() == 2; }
    bool fractional_space() const { return fractional_; }
    const AxisData& axis_x() const { return axes_.front(); }
    const AxisData& axis_y() const { return axes_.back(); }

    static SpatialOperator make_1d(DenseMatrix interior, AxisData x, bool fractional);
    static SpatialOperator make_2d(DenseMatrix interior, AxisData x, AxisData y, bool fractional);

private:
    DenseMatrix interior_;
    std::vector<AxisData> axes_;
    bool fractional_ = false;
};

// kappa*W1 - eps*W2 on the interior block.
SpatialOperator assemble_K_1d(double kappa, double eps, const WeightMatrix& w1,
                              const WeightMatrix& w2);

// kappa_x I_y (x) W1_x + kappa_y W1_y (x) I_x - eps_x I_y (x) W2_x - eps_y W2_y (x) I_x.
SpatialOperator assemble_K_2d(double kappa_x, double kappa_y, double eps_x, double eps_y,
                              const WeightMatrix& wx1, const WeightMatrix& wx2,
                              const WeightMatrix& wy1, const WeightMatrix& wy2);

// eps_x I_y (x) W^beta1_x + eps_y W^beta2_y (x) I_x over interior unknowns.
SpatialOperator assemble_frac_L_2d(double eps_x, double eps_y, const WeightMatrix& wbx,
                                   const WeightMatrix& wby);

using ScalarFn1 = std::function<double(double)>;                  // g(t)
using ScalarFn2 = std::function<double(double, double)>;          // f(x,t)
using ScalarFn3 = std::function<double(double, double, double)>;  // f(x,y,t) / g(x,y,t)

// G_i = f(x_i,t) - kappa*(a1_{i0} g1 + a1_{iM} g2) + eps*(a2_{i0} g1 + a2_{iM} g2).
std::vector<double> boundary_load(const SpatialOperator& op, double t, const ScalarFn2& f,
                                  const ScalarFn1& g1, const ScalarFn1& g2);

// 2D analog with one boundary function g(x,y,t) sampled on the four edges.
std::vector<double> boundary_load(const SpatialOperator& op, double t, const ScalarFn3& f,
                                  const ScalarFn3& g);

// Interior sample of a time-slice, matching the operator's unknown ordering.
std::vector<double> sample_interior(const Grid& g, const ScalarFn1& fn);
std::vector<double> sample_interior(const Grid& gx, const Grid& gy, const ScalarFn2& fn);

} // namespace fade
