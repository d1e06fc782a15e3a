#pragma once

namespace oapl::stats {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
double incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

// Two-sided normal tail, P(|Z| >= |z|).
double normal_two_tailed(double z);

}  // namespace oapl::stats
