#include "cft/convergents.hpp"

namespace cft {

ConvergentTable::ConvergentTable(std::vector<mpz_class> quotients) {
    if (quotients.empty()) throw std::invalid_argument("quotient list is empty");
    if (quotients[0] < 0) throw std::invalid_argument("a_0 must be >= 0");
    for (std::size_t i = 1; i < quotients.size(); ++i)
        if (quotients[i] < 1) throw std::invalid_argument("a_n must be >= 1 for n >= 1");

    p_ = {mpz_class(1), quotients[0]};  // rows -1, 0
    q_ = {mpz_class(0), mpz_class(1)};
    a_.push_back(quotients[0]);
    for (std::size_t i = 1; i < quotients.size(); ++i) extend(quotients[i]);
}

void ConvergentTable::extend(const mpz_class& a_next) {
    if (a_next < 1) throw std::invalid_argument("a_n must be >= 1 for n >= 1");
    const std::size_t m = p_.size();
    p_.push_back(a_next * p_[m - 1] + p_[m - 2]);
    q_.push_back(a_next * q_[m - 1] + q_[m - 2]);
    a_.push_back(a_next);
}

void ConvergentTable::check_range(long n, long needed_up_to) const {
    if (n < -1 || needed_up_to > max_n())
        throw std::out_of_range("convergent index out of range (n=" + std::to_string(n) + ", have " +
                                std::to_string(max_n()) + ")");
}

const mpz_class& ConvergentTable::quotient(long n) const {
    if (n < 0 || n > max_n()) throw std::out_of_range("quotient index out of range");
    return a_[static_cast<std::size_t>(n)];
}

const mpz_class& ConvergentTable::p(long n) const {
    check_range(n, n);
    return p_[static_cast<std::size_t>(n) + 1];
}

const mpz_class& ConvergentTable::q(long n) const {
    check_range(n, n);
    return q_[static_cast<std::size_t>(n) + 1];
}

mpq_class ConvergentTable::value(long n) const {
    if (n < 0) throw std::out_of_range("value requires n >= 0");
    check_range(n, n);
    mpq_class v(p(n), q(n));
    v.canonicalize();  // gcd(p_n, q_n) = 1, so this is a no-op in practice
    return v;
}

std::pair<mpq_class, mpq_class> ConvergentTable::error_bounds(long n) const {
    if (n < 0) throw std::out_of_range("error_bounds requires n >= 0");
    check_range(n, n + 1);
    const mpz_class& qn = q(n);
    const mpz_class& qn1 = q(n + 1);
    mpq_class low(1, qn * (qn1 + qn));
    mpq_class high(1, qn * qn1);
    low.canonicalize();
    high.canonicalize();
    return {low, high};
}

QInterval ConvergentTable::enclose_value(long n) const {
    if (n < 1) throw std::out_of_range("enclose_value requires n >= 1");
    check_range(n, n + 1);
    mpq_class vn = value(n), vn1 = value(n + 1);
    // v_{n+1} - v_n = (-1)^n / (q_n q_{n+1}): even n ascends, odd n descends.
    return (n % 2 == 0) ? QInterval(vn, vn1) : QInterval(vn1, vn);
}

ConvergentTable convergents(const std::vector<mpz_class>& quotients) { return ConvergentTable(quotients); }

ConvergentTable convergents(const QuotientSequence& spec, long upto) {
    return ConvergentTable(generate_quotients(spec, upto));
}

}  // namespace cft
