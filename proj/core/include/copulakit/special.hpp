#pragma once

namespace copulakit {

// Standard normal density, CDF and quantile. The quantile uses a rational
// approximation polished with one Newton step; round trips are accurate to
// better than 1e-12 on [1e-10, 1-1e-10]. norm_quantile(0) and norm_quantile(1)
// return -inf / +inf.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_quantile(double p);

// Student-t with 4 degrees of freedom (closed forms).
double student4_pdf(double x);
double student4_pdf_deriv(double x);
double student4_cdf(double x);
double student4_quantile(double p);

// Student-t with 5 degrees of freedom; needed for the t4 conditional CDF.
double student5_pdf(double x);
double student5_cdf(double x);

}  // namespace copulakit
