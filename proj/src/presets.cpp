#include "cft/presets.hpp"

namespace cft {

SequencePair preset_example1(const mpq_class& delta, long max_index) {
    if (delta <= 0) throw std::invalid_argument("delta must be > 0");
    mpq_class alpha = 1 + delta;
    QuotientSequence s{mpz_class(0), PowerRule{mpz_class(3), alpha, Rounding::Ceil}, max_index, {}};
    return SequencePair{"example1", s, s, alpha, alpha};
}

SequencePair preset_example2(long max_index) {
    QuotientSequence s{mpz_class(0), PowerRule{mpz_class(2), mpq_class(5), Rounding::Ceil}, max_index, {}};
    return SequencePair{"example2", s, s, mpq_class(5), mpq_class(5)};
}

SequencePair preset_by_name(const std::string& name, long max_index) {
    if (name == "example2") return preset_example2(max_index);
    if (name == "example1") return preset_example1(2, max_index);
    const std::string prefix = "example1:delta=";
    if (name.rfind(prefix, 0) == 0) return preset_example1(parse_rational(name.substr(prefix.size())), max_index);
    throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace cft
