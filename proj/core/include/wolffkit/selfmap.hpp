#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wolffkit/geometry.hpp"

namespace wolff {

namespace detail {
struct MapImpl;
}

struct ValidationOptions {
    std::size_t samples = 1000;
    std::uint64_t seed = 0x5eed;
};

/// An immutable self-map of a domain, built from the map-expression grammar
///
///   expr    := tuple | term
///   tuple   := "(" term {"," term} ")"
///   term    := term ("+"|"-"|"*"|"/") term
///            | "mobius" "(" complex ")" "(" term ")"
///            | "conj" "(" term ")"
///            | "scale" "(" real "," point ")" "(" term ")"
///            | complex | var
///   var     := "z" digit+
///   complex := real [("+"|"-") real "i"]
///
/// with the usual precedence, left associativity and insignificant whitespace.
/// mobius(a)(u) = (u + a) / (1 + conj(a) u); scale(s, c)(u) = s u + (1 - s) c.
/// A scale whose point and argument are tuples acts on the whole map.
///
/// Maps can also be assembled programmatically (composition, componentwise
/// Mobius maps, scalings, slices). Copies share the underlying tree.
class SelfMapExpr {
public:
    /// Parses and validates; throws ParseError or ValidationError.
    static SelfMapExpr parse(std::string_view text, const DomainSpec& d, ValidationOptions opts = {});
    /// Parses without the sampling check.
    static SelfMapExpr parse_unchecked(std::string_view text, const DomainSpec& d);

    static SelfMapExpr identity(const DomainSpec& d);
    /// z -> (rot_j * (z_j + a_j) / (1 + conj(a_j) z_j))_j
    static SelfMapExpr componentwise_mobius(const DomainSpec& d, std::vector<Complex> a, std::vector<Complex> rotations = {});
    /// z -> s * inner(z) + (1 - s) * anchor
    static SelfMapExpr scale(double s, const CPoint& anchor, const SelfMapExpr& inner);
    /// compose({f, g, h}) = f o g o h (h is applied first).
    static SelfMapExpr compose(const std::vector<SelfMapExpr>& maps);

    /// One-variable slice: zeta -> m(p with p_j = zeta)_j, a self-map of the unit disk.
    SelfMapExpr slice(std::size_t j, const CPoint& p) const;

    CPoint operator()(const CPoint& z) const { return evaluate(z); }
    /// Throws DimensionMismatch; does not check membership.
    CPoint evaluate(const CPoint& z) const;

    const DomainSpec& domain() const noexcept { return domain_; }
    const std::string& text() const noexcept { return text_; }

private:
    SelfMapExpr(DomainSpec d, std::shared_ptr<const detail::MapImpl> impl, std::string text);

    DomainSpec domain_;
    std::shared_ptr<const detail::MapImpl> impl_;
    std::string text_;
};

/// Equivalent to SelfMapExpr::parse.
SelfMapExpr parse_map(std::string_view text, const DomainSpec& d, ValidationOptions opts = {});

/// Samples the domain (uniformly plus a near-boundary shell) and throws
/// ValidationError if any image is non-finite or outside the closed domain.
void validate_self_map(const SelfMapExpr& m, ValidationOptions opts = {});

}  // namespace wolff
