#include "cft/polynomial.hpp"

namespace cft {

IntPolynomial IntPolynomial::from_coeffs(std::vector<mpz_class> coeffs) {
    if (coeffs.size() < 2) throw std::invalid_argument("polynomial degree must be >= 1");
    if (coeffs.back() == 0) throw std::invalid_argument("leading coefficient must be nonzero");
    return IntPolynomial(std::move(coeffs));
}

mpz_class IntPolynomial::height() const {
    mpz_class h = 0;
    for (const auto& c : coeffs_) {
        mpz_class a = abs(c);
        if (a > h) h = a;
    }
    return h;
}

mpq_class IntPolynomial::eval(const mpq_class& x) const {
    mpq_class acc(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + mpq_class(coeffs_[i]);
    return acc;
}

QInterval IntPolynomial::eval_interval(const QInterval& x) const {
    QInterval acc{mpq_class(coeffs_.back())};
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * x + QInterval(mpq_class(coeffs_[i]));
    return acc;
}

QInterval IntPolynomial::eval_derivative_interval(const QInterval& x) const {
    // derivative coefficients k * e_k, k = 1..d
    const long d = degree();
    QInterval acc{mpq_class(d) * mpq_class(coeffs_.back())};
    for (long k = d - 1; k >= 1; --k) acc = acc * x + QInterval(mpq_class(k) * mpq_class(coeffs_[static_cast<std::size_t>(k)]));
    return acc;
}

}  // namespace cft
