#pragma once

#include <vector>

#include "cft/interval.hpp"

namespace cft {

// Nonzero integer polynomial e_0 + e_1 X + ... + e_d X^d with e_d != 0
// and d >= 1. Height is always recomputed from the coefficients.
class IntPolynomial {
public:
    static IntPolynomial from_coeffs(std::vector<mpz_class> coeffs);

    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    mpz_class height() const;
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    mpq_class eval(const mpq_class& x) const;
    QInterval eval_interval(const QInterval& x) const;  // Horner, exact endpoints

    // P'(x) over the interval, same Horner scheme. (The derivative may be
    // constant, which IntPolynomial itself cannot represent.)
    QInterval eval_derivative_interval(const QInterval& x) const;

    bool operator==(const IntPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    explicit IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {}
    std::vector<mpz_class> coeffs_;
};

}  // namespace cft
