#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace hpg {

using Int = mpz_class;
using Rat = mpq_class;

// Error kinds mirror the failure modes of the public operations; the what()
// string carries the specific context.
enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    PoleAtSample,
    InvalidArgument,
    ParseError,
    DegreeTooLarge,
    NotImplemented,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline Rat rat(long num, long den = 1) {
    if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "-3/4", "12", "0". Whitespace is not accepted.
inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) fail(ErrorKind::ParseError, "bad rational: '" + s + "'");
    r.canonicalize();
    if (r.get_den() == 0) fail(ErrorKind::ParseError, "zero denominator: '" + s + "'");
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    bool neg = e < 0;
    unsigned long k = neg ? (unsigned long)(-e) : (unsigned long)e;
    if (neg) {
        if (b == 0) fail(ErrorKind::DivisionByZero, "0 to a negative power");
        b = 1 / b;
    }
    Int num = b.get_num(), den = b.get_den(), pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), k);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), k);
    Rat out(pn, pd);
    out.canonicalize();
    return out;
}

// Exact k-th root of a rational if one exists.
inline std::optional<Rat> kth_root(const Rat& r, unsigned k) {
    if (k == 0) return std::nullopt;
    if (r == 0) return Rat(0);
    if (r < 0 && k % 2 == 0) return std::nullopt;
    Int num = r.get_num(), den = r.get_den();
    Int rn, rd;
    bool ok_n = mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) != 0;
    bool ok_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) != 0;
    if (!ok_n || !ok_d) return std::nullopt;
    Rat out(rn, rd);
    out.canonicalize();
    return out;
}

}  // namespace hpg
