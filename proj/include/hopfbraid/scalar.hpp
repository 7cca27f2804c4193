#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace hopfbraid {

// Thrown when two values from different fields meet in one operation.
class FieldMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Scalar;

// Either the rationals or a prime field F_p with p < 2^61.
class Field {
public:
    enum class Kind { Rational, Prime };

    static Field rationals() { return Field(Kind::Rational, 0); }
    static Field prime(std::uint64_t p);

    Kind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }
    bool is_prime() const { return kind_ == Kind::Prime; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t n) const;
    // Accepts "a", "-a", "a/b" for Q and integers for F_p. Raises ParseError on
    // malformed input, including zero denominators. `where` names the offending
    // field in the message.
    Scalar parse(std::string_view text, std::string_view where = "") const;

    // "Q" or "Fp:<p>"
    std::string name() const;
    static Field from_name(std::string_view name);

    friend bool operator==(const Field&, const Field&) = default;

private:
    friend class Scalar;
    Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

struct ModP {
    std::uint64_t value;
    std::uint64_t p;
    friend bool operator==(const ModP&, const ModP&) = default;
};

class Scalar {
public:
    // Rational zero. Prefer Field::zero() when the field is known.
    Scalar() : value_(mpq_class(0)) {}
    explicit Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
    explicit Scalar(ModP r) : value_(r) {}

    Field field() const;
    bool is_zero() const;
    bool is_one() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    Scalar inverse() const;

    friend bool operator==(const Scalar& a, const Scalar& b);

    // "a/b" or "a" for Q, the residue for F_p.
    std::string to_string() const;

    const mpq_class* as_rational() const { return std::get_if<mpq_class>(&value_); }
    const ModP* as_residue() const { return std::get_if<ModP>(&value_); }

private:
    std::variant<mpq_class, ModP> value_;
};

}  // namespace hopfbraid
