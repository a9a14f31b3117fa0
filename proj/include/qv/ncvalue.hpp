#pragma once

#include "qv/hilbert.hpp"

// Noncommutative value of an observable at a state: the tuple {f; V_0..V_{D-1}}
// with f = <phi|B|phi> (states are unit-normalized, so the expectation-value
// function needs no denominator) and V_n = -f conj(z_n) + sum_m conj(z_m) B_mn,
// the holomorphic coordinate derivatives of f. Values multiply through the
// Kaehler star product: the scalar part closes on the tuples alone, the vector
// part of a product needs the operators' matrix elements, which is why the
// tuple does not store its source operator.

namespace qv {

struct NCValue {
  Complex f;
  Vector v;

  Index dim() const { return v.size(); }
};

/// <phi|B|phi> for the normalized state phi.
Complex expectation_fn(const Matrix& b, const StateVector& phi);

/// The D coordinate derivatives V_n, indexed by the global basis convention.
/// The "barred" component V_nbar is conj(V_n) and is never stored separately.
Vector v_components(const Matrix& b, const StateVector& phi);

NCValue nc_value(const Matrix& b, const StateVector& phi);
NCValue nc_value(const Observable& b, const StateVector& phi);

/// Scalar part of the star product, f_a f_b + sum_n V_a_n conj(V_b_n),
/// computed from the tuples alone. Equals <phi|AB|phi> for Hermitian factors.
Complex star_scalar(const NCValue& a, const NCValue& b);

/// Full value of the (generally non-Hermitian) product BC.
NCValue nc_value_of_product(const Matrix& b, const Matrix& c, const StateVector& phi);

/// sum_n |V_n|^2; equals <B^2> - <B>^2 for a Hermitian source.
double uncertainty(const NCValue& a);

/// Value of B at the state W phi, where W is a process acting only on
/// subsystems complementary to B's support, i.e. [W, B] = 0. f is then
/// invariant and the vector part transports as v' = conj(W) v; the function
/// recomputes the value at the new state and leaves contract checks to the
/// caller. A non-commuting W is rejected: no invariance is claimed for it.
NCValue transport_under_local_process(const NCValue& a, const Matrix& b, const Unitary& w,
                                      const StateVector& phi, double tol = kDefaultTol);

}  // namespace qv
