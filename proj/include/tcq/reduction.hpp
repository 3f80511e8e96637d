#pragma once

#include <algorithm>
#include <cmath>

#include "tcq/dynamics.hpp"
#include "tcq/error.hpp"
#include "tcq/qmatrix.hpp"

namespace tcq {

/// Two-qubit X state with vanishing anti-diagonal corner (rho_14 = 0).
/// Basis {|++>, |+->, |-+>, |-->}. Only the populations and the |+->/|-+>
/// coherence can be non-zero.
class TwoQubitX {
  public:
    static constexpr double kTol = 1e-10;

    TwoQubitX(double r11, double r22, double r33, double r44, Complex r23)
        : r11_(r11), r22_(r22), r33_(r33), r44_(r44), r23_(r23) {
        validate();
    }

    double r11() const { return r11_; }
    double r22() const { return r22_; }
    double r33() const { return r33_; }
    double r44() const { return r44_; }
    Complex r23() const { return r23_; }

    /// |rho_23| - sqrt(rho_11 rho_44). Concurrence is twice its positive part;
    /// being analytic in time it is what root finders bracket.
    double entanglement_margin() const {
        return std::abs(r23_) - std::sqrt(std::max(0.0, r11_) * std::max(0.0, r44_));
    }

    Mat4 to_dense() const {
        Mat4 m = Mat4::Zero();
        m(0, 0) = r11_;
        m(1, 1) = r22_;
        m(2, 2) = r33_;
        m(3, 3) = r44_;
        m(1, 2) = r23_;
        m(2, 1) = std::conj(r23_);
        return m;
    }

    double purity() const {
        return r11_ * r11_ + r22_ * r22_ + r33_ * r33_ + r44_ * r44_ + 2.0 * std::norm(r23_);
    }

  private:
    void validate() const {
        for (double p : {r11_, r22_, r33_, r44_}) {
            if (!std::isfinite(p)) throw StateError("X state population is not finite");
            if (p < -kTol) throw StateError("X state has a negative population");
        }
        if (!std::isfinite(r23_.real()) || !std::isfinite(r23_.imag()))
            throw StateError("X state coherence is not finite");
        if (std::abs(r11_ + r22_ + r33_ + r44_ - 1.0) > kTol) throw StateError("X state populations do not sum to 1");
        if (std::norm(r23_) > r22_ * r33_ + kTol) throw StateError("X state coherence violates positivity");
    }

    double r11_, r22_, r33_, r44_;
    Complex r23_;
};

/// Traces out the field. The four manifold basis states carry photon numbers
/// n-1, n, n, n+1, so only the |+->_n / |-+>_n coherence survives.
inline TwoQubitX partial_trace_field(const ManifoldDensity &rho) {
    const Mat4 &m = rho.matrix();
    return TwoQubitX(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(1, 2));
}

} // namespace tcq
