#include "hopfbraid/scalar.hpp"

#include <charconv>

namespace hopfbraid {

namespace {

bool is_probable_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % d == 0) return n == d;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for 64-bit inputs
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t reduce_signed(std::int64_t n, std::uint64_t p) {
    auto m = static_cast<std::int64_t>(p);
    std::int64_t r = n % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

const ModP& residue_of(const Scalar& s, std::uint64_t p) {
    const ModP* r = s.as_residue();
    if (!r || r->p != p) throw FieldMismatch("scalar field mismatch: expected Fp:" + std::to_string(p));
    return *r;
}

const mpq_class& rational_of(const Scalar& s) {
    const mpq_class* q = s.as_rational();
    if (!q) throw FieldMismatch("scalar field mismatch: expected Q");
    return *q;
}

}  // namespace

Field Field::prime(std::uint64_t p) {
    if (p >= (1ULL << 61) || !is_probable_prime(p))
        throw std::invalid_argument("Fp requires a prime below 2^61, got " + std::to_string(p));
    return Field(Kind::Prime, p);
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(std::int64_t n) const {
    if (kind_ == Kind::Rational) return Scalar(mpq_class(static_cast<long>(n)));
    return Scalar(ModP{reduce_signed(n, p_), p_});
}

Scalar Field::parse(std::string_view text, std::string_view where) const {
    auto fail = [&](const std::string& why) -> ParseError {
        std::string msg = "malformed coefficient";
        if (!where.empty()) msg += " in field '" + std::string(where) + "'";
        msg += ": \"" + std::string(text) + "\" (" + why + ")";
        return ParseError(msg);
    };
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    if (!is_int(num) || !is_int(den)) throw fail("not an integer or fraction");
    std::string ns(num.front() == '+' ? num.substr(1) : num);
    std::string ds(den.front() == '+' ? den.substr(1) : den);
    mpz_class n(ns), d(ds);
    if (d == 0) throw fail("zero denominator");
    if (kind_ == Kind::Rational) return Scalar(mpq_class(n, d));
    mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class nr = n % pz, dr = d % pz;
    if (nr < 0) nr += pz;
    if (dr < 0) dr += pz;
    if (dr == 0) throw fail("denominator divisible by p");
    Scalar a(ModP{nr.get_ui(), p_});
    Scalar b(ModP{dr.get_ui(), p_});
    return a / b;
}

std::string Field::name() const {
    if (kind_ == Kind::Rational) return "Q";
    return "Fp:" + std::to_string(p_);
}

Field Field::from_name(std::string_view name) {
    if (name == "Q") return rationals();
    if (name.starts_with("Fp:")) {
        std::uint64_t p = 0;
        auto digits = name.substr(3);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc() || ptr != digits.data() + digits.size())
            throw ParseError("bad field name: " + std::string(name));
        return prime(p);
    }
    throw ParseError("bad field name: " + std::string(name) + " (expected Q or Fp:<p>)");
}

Field Scalar::field() const {
    if (const ModP* r = as_residue()) return Field(Field::Kind::Prime, r->p);
    return Field::rationals();
}

bool Scalar::is_zero() const {
    if (const ModP* r = as_residue()) return r->value == 0;
    return sgn(*as_rational()) == 0;
}

bool Scalar::is_one() const {
    if (const ModP* r = as_residue()) return r->value == 1;
    return *as_rational() == 1;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    if (auto* r = std::get_if<ModP>(&value_)) {
        const ModP& o = residue_of(rhs, r->p);
        std::uint64_t s = r->value + o.value;
        r->value = s >= r->p ? s - r->p : s;
    } else {
        std::get<mpq_class>(value_) += rational_of(rhs);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
    if (auto* r = std::get_if<ModP>(&value_)) {
        const ModP& o = residue_of(rhs, r->p);
        r->value = r->value >= o.value ? r->value - o.value : r->value + r->p - o.value;
    } else {
        std::get<mpq_class>(value_) -= rational_of(rhs);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
    if (auto* r = std::get_if<ModP>(&value_)) {
        const ModP& o = residue_of(rhs, r->p);
        r->value = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r->value) * o.value % r->p);
    } else {
        std::get<mpq_class>(value_) *= rational_of(rhs);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

Scalar Scalar::operator-() const {
    if (const ModP* r = as_residue()) return Scalar(ModP{r->value == 0 ? 0 : r->p - r->value, r->p});
    return Scalar(mpq_class(-*as_rational()));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    if (const ModP* r = as_residue()) {
        // extended Euclid on signed 128-bit values
        __int128 a = r->value, m = r->p, x0 = 1, x1 = 0;
        while (m != 0) {
            __int128 q = a / m;
            __int128 t = a - q * m;
            a = m;
            m = t;
            t = x0 - q * x1;
            x0 = x1;
            x1 = t;
        }
        __int128 p = r->p;
        x0 %= p;
        if (x0 < 0) x0 += p;
        return Scalar(ModP{static_cast<std::uint64_t>(x0), r->p});
    }
    return Scalar(mpq_class(1 / *as_rational()));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.value_.index() != b.value_.index()) return false;
    if (const ModP* r = a.as_residue()) return *r == *b.as_residue();
    return *a.as_rational() == *b.as_rational();
}

std::string Scalar::to_string() const {
    if (const ModP* r = as_residue()) return std::to_string(r->value);
    return as_rational()->get_str();
}

}  // namespace hopfbraid
