#include "wolffkit/selfmap.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "wolffkit/random.hpp"

namespace wolff {
namespace detail {

struct MapImpl {
    virtual ~MapImpl() = default;
    virtual CPoint apply(const CPoint& z) const = 0;
};

}  // namespace detail

namespace {

// ---- scalar / tuple expression tree -------------------------------------

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Mobius, Conj, Scale, Tuple } kind;
    Complex value{};        // Const; Mobius parameter a
    std::size_t var = 0;    // Var (0-based)
    double s = 0.0;         // Scale factor
    std::vector<NodePtr> kids;
    std::size_t pos = 0;    // source offset for diagnostics

    bool is_tuple() const { return kind == Kind::Tuple || (kind == Kind::Scale && kids[1]->is_tuple()); }
    std::size_t width() const { return kind == Kind::Tuple ? kids.size() : kids[1]->width(); }
};

Complex eval_scalar(const Node& n, const CPoint& z) {
    using K = Node::Kind;
    switch (n.kind) {
        case K::Const: return n.value;
        case K::Var: return z[n.var];
        case K::Add: return eval_scalar(*n.kids[0], z) + eval_scalar(*n.kids[1], z);
        case K::Sub: return eval_scalar(*n.kids[0], z) - eval_scalar(*n.kids[1], z);
        case K::Mul: return eval_scalar(*n.kids[0], z) * eval_scalar(*n.kids[1], z);
        case K::Div: return eval_scalar(*n.kids[0], z) / eval_scalar(*n.kids[1], z);
        case K::Neg: return -eval_scalar(*n.kids[0], z);
        case K::Conj: return std::conj(eval_scalar(*n.kids[0], z));
        case K::Mobius: {
            const Complex u = eval_scalar(*n.kids[0], z);
            return (u + n.value) / (1.0 + std::conj(n.value) * u);
        }
        case K::Scale: return n.s * eval_scalar(*n.kids[1], z) + (1.0 - n.s) * eval_scalar(*n.kids[0], z);
        case K::Tuple: break;
    }
    throw Error("tuple used where a scalar is expected");
}

void eval_tuple(const Node& n, const CPoint& z, CPoint& out) {
    if (n.kind == Node::Kind::Tuple) {
        for (std::size_t j = 0; j < n.kids.size(); ++j) out[j] = eval_scalar(*n.kids[j], z);
        return;
    }
    // Map-level scale: kids[0] is the anchor tuple, kids[1] the inner tuple.
    eval_tuple(*n.kids[1], z, out);
    for (std::size_t j = 0; j < out.dim(); ++j) out[j] = n.s * out[j] + (1.0 - n.s) * eval_scalar(*n.kids[0]->kids[j], z);
}

bool is_constant(const Node& n) {
    if (n.kind == Node::Kind::Var) return false;
    for (const auto& k : n.kids)
        if (!is_constant(*k)) return false;
    return true;
}

std::size_t max_var(const Node& n) {
    std::size_t m = n.kind == Node::Kind::Var ? n.var + 1 : 0;
    for (const auto& k : n.kids) m = std::max(m, max_var(*k));
    return m;
}

// ---- parser --------------------------------------------------------------

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse() {
        NodePtr n = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_word(std::string_view w) {
        skip_ws();
        if (src_.substr(pos_, w.size()) != w) return false;
        const std::size_t end = pos_ + w.size();
        if (end < src_.size() && std::isalnum(static_cast<unsigned char>(src_[end]))) return false;
        pos_ = end;
        return true;
    }

    static NodePtr make(Node::Kind k, std::vector<NodePtr> kids, std::size_t pos) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->kids = std::move(kids);
        n->pos = pos;
        return n;
    }

    void require_scalar(const NodePtr& n) const {
        if (n->is_tuple()) throw ParseError("tuple used inside an arithmetic term", n->pos);
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            const std::size_t at = pos_;
            Node::Kind k;
            if (accept('+')) k = Node::Kind::Add;
            else if (accept('-')) k = Node::Kind::Sub;
            else return lhs;
            NodePtr rhs = parse_product();
            require_scalar(lhs);
            require_scalar(rhs);
            lhs = make(k, {lhs, rhs}, at);
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            const std::size_t at = pos_;
            Node::Kind k;
            if (accept('*')) k = Node::Kind::Mul;
            else if (accept('/')) k = Node::Kind::Div;
            else return lhs;
            NodePtr rhs = parse_unary();
            require_scalar(lhs);
            require_scalar(rhs);
            lhs = make(k, {lhs, rhs}, at);
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        const std::size_t at = pos_;
        if (accept('-')) {
            NodePtr arg = parse_unary();
            require_scalar(arg);
            return make(Node::Kind::Neg, {arg}, at);
        }
        if (accept('+')) return parse_unary();
        return parse_primary();
    }

    Complex constant_of(const NodePtr& n, const char* what) const {
        if (n->is_tuple() || !is_constant(*n)) throw ParseError(std::string(what) + " must be a constant", n->pos);
        return eval_scalar(*n, CPoint{});
    }

    NodePtr parse_primary() {
        skip_ws();
        const std::size_t at = pos_;
        if (pos_ >= src_.size()) fail("unexpected end of input");
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            std::vector<NodePtr> items{parse_sum()};
            while (accept(',')) items.push_back(parse_sum());
            expect(')');
            if (items.size() == 1) return items.front();
            for (const auto& it : items) require_scalar(it);
            return make(Node::Kind::Tuple, std::move(items), at);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (accept_word("mobius")) {
            expect('(');
            NodePtr a = parse_sum();
            expect(')');
            expect('(');
            NodePtr arg = parse_sum();
            expect(')');
            require_scalar(arg);
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Mobius;
            n->value = constant_of(a, "mobius parameter");
            if (!(std::abs(n->value) < 1.0)) throw ParseError("mobius parameter must satisfy |a| < 1", a->pos);
            n->kids = {arg};
            n->pos = at;
            return n;
        }
        if (accept_word("conj")) {
            expect('(');
            NodePtr arg = parse_sum();
            expect(')');
            require_scalar(arg);
            return make(Node::Kind::Conj, {arg}, at);
        }
        if (accept_word("scale")) {
            expect('(');
            NodePtr s = parse_sum();
            expect(',');
            NodePtr anchor = parse_sum();
            expect(')');
            expect('(');
            NodePtr arg = parse_sum();
            expect(')');
            const Complex sv = constant_of(s, "scale factor");
            if (sv.imag() != 0.0 || !(sv.real() > 0.0 && sv.real() <= 1.0))
                throw ParseError("scale factor must be a real number in (0,1]", s->pos);
            if (anchor->is_tuple() != arg->is_tuple() || (arg->is_tuple() && anchor->width() != arg->width()))
                throw ParseError("scale anchor and argument must have the same shape", anchor->pos);
            if (anchor->is_tuple()) {
                if (anchor->kind != Node::Kind::Tuple) throw ParseError("scale anchor must be a point", anchor->pos);
                for (const auto& k : anchor->kids) constant_of(k, "scale anchor");
            } else {
                constant_of(anchor, "scale anchor");
            }
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Scale;
            n->s = sv.real();
            n->kids = {anchor, arg};
            n->pos = at;
            return n;
        }
        if (c == 'z') {
            ++pos_;
            const std::size_t digits = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            if (pos_ == digits) fail("variable needs an index, e.g. z1");
            std::size_t k = 0;
            std::from_chars(src_.data() + digits, src_.data() + pos_, k);
            if (k == 0) throw ParseError("variables are numbered from z1", at);
            auto n = std::make_shared<Node>();
            n->kind = Node::Kind::Var;
            n->var = k - 1;
            n->pos = at;
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr parse_number() {
        const std::size_t at = pos_;
        std::size_t end = pos_;
        auto digits = [&] {
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        };
        digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            digits();
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
                end = e;
                digits();
            }
        }
        // std::from_chars for double is not available everywhere yet.
        const std::string lit(src_.substr(at, end - at));
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(lit, &used);
            if (used != lit.size()) throw std::invalid_argument(lit);
        } catch (const std::exception&) {
            throw ParseError("malformed number '" + lit + "'", at);
        }
        pos_ = end;
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Const;
        n->pos = at;
        n->value = v;
        if (pos_ < src_.size() && src_[pos_] == 'i') {
            ++pos_;
            n->value = Complex(0.0, v);
        }
        return n;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

// ---- map implementations -------------------------------------------------

class ExprMap final : public detail::MapImpl {
public:
    ExprMap(NodePtr root, std::size_t dim) : root_(std::move(root)), dim_(dim) {}
    CPoint apply(const CPoint& z) const override {
        CPoint out(dim_);
        if (root_->is_tuple()) eval_tuple(*root_, z, out);
        else out[0] = eval_scalar(*root_, z);
        return out;
    }

private:
    NodePtr root_;
    std::size_t dim_;
};

class IdentityMap final : public detail::MapImpl {
public:
    CPoint apply(const CPoint& z) const override { return z; }
};

class MobiusMap final : public detail::MapImpl {
public:
    MobiusMap(std::vector<Complex> a, std::vector<Complex> rot) : a_(std::move(a)), rot_(std::move(rot)) {}
    CPoint apply(const CPoint& z) const override {
        CPoint out(z.dim());
        for (std::size_t j = 0; j < z.dim(); ++j) out[j] = rot_[j] * (z[j] + a_[j]) / (1.0 + std::conj(a_[j]) * z[j]);
        return out;
    }

private:
    std::vector<Complex> a_, rot_;
};

class ScaleMap final : public detail::MapImpl {
public:
    ScaleMap(double s, CPoint anchor, std::shared_ptr<const detail::MapImpl> inner)
        : s_(s), anchor_(std::move(anchor)), inner_(std::move(inner)) {}
    CPoint apply(const CPoint& z) const override {
        CPoint out = inner_->apply(z);
        for (std::size_t j = 0; j < out.dim(); ++j) out[j] = s_ * out[j] + (1.0 - s_) * anchor_[j];
        return out;
    }

private:
    double s_;
    CPoint anchor_;
    std::shared_ptr<const detail::MapImpl> inner_;
};

class ComposeMap final : public detail::MapImpl {
public:
    explicit ComposeMap(std::vector<std::shared_ptr<const detail::MapImpl>> maps) : maps_(std::move(maps)) {}
    CPoint apply(const CPoint& z) const override {
        CPoint p = z;
        for (auto it = maps_.rbegin(); it != maps_.rend(); ++it) p = (*it)->apply(p);
        return p;
    }

private:
    std::vector<std::shared_ptr<const detail::MapImpl>> maps_;
};

class SliceMap final : public detail::MapImpl {
public:
    SliceMap(std::shared_ptr<const detail::MapImpl> inner, std::size_t j, CPoint base)
        : inner_(std::move(inner)), j_(j), base_(std::move(base)) {}
    CPoint apply(const CPoint& z) const override {
        CPoint p = base_;
        p[j_] = z[0];
        return CPoint{inner_->apply(p)[j_]};
    }

private:
    std::shared_ptr<const detail::MapImpl> inner_;
    std::size_t j_;
    CPoint base_;
};

std::string point_text(const CPoint& p) {
    std::ostringstream os;
    os.precision(17);
    os << p;
    return os.str();
}

}  // namespace

SelfMapExpr::SelfMapExpr(DomainSpec d, std::shared_ptr<const detail::MapImpl> impl, std::string text)
    : domain_(d), impl_(std::move(impl)), text_(std::move(text)) {}

SelfMapExpr SelfMapExpr::parse_unchecked(std::string_view text, const DomainSpec& d) {
    NodePtr root = Parser(text).parse();
    const std::size_t width = root->is_tuple() ? root->width() : 1;
    if (width != d.dim())
        throw ValidationError("map has " + std::to_string(width) + " components but the domain has dimension " +
                              std::to_string(d.dim()));
    if (max_var(*root) > d.dim())
        throw ValidationError("map uses z" + std::to_string(max_var(*root)) + " on a domain of dimension " +
                              std::to_string(d.dim()));
    return SelfMapExpr(d, std::make_shared<ExprMap>(std::move(root), d.dim()), std::string(text));
}

SelfMapExpr SelfMapExpr::parse(std::string_view text, const DomainSpec& d, ValidationOptions opts) {
    SelfMapExpr m = parse_unchecked(text, d);
    validate_self_map(m, opts);
    return m;
}

SelfMapExpr SelfMapExpr::identity(const DomainSpec& d) {
    return SelfMapExpr(d, std::make_shared<IdentityMap>(), "identity");
}

SelfMapExpr SelfMapExpr::componentwise_mobius(const DomainSpec& d, std::vector<Complex> a, std::vector<Complex> rotations) {
    if (d.kind() == DomainKind::UnitBall && d.dim() > 1)
        throw ValidationError("componentwise Mobius maps are not automorphisms of the ball");
    if (a.size() != d.dim()) throw DimensionMismatch(d.dim(), a.size());
    if (rotations.empty()) rotations.assign(d.dim(), 1.0);
    if (rotations.size() != d.dim()) throw DimensionMismatch(d.dim(), rotations.size());
    for (const auto& v : a)
        if (!(std::abs(v) < 1.0)) throw ValidationError("Mobius parameters must lie in the open disk");
    for (const auto& r : rotations)
        if (std::abs(std::abs(r) - 1.0) > kTolBoundary) throw ValidationError("rotations must be unimodular");
    std::ostringstream os;
    os.precision(17);
    os << "mobius" << point_text(CPoint(a)) << " rot" << point_text(CPoint(rotations));
    return SelfMapExpr(d, std::make_shared<MobiusMap>(std::move(a), std::move(rotations)), os.str());
}

SelfMapExpr SelfMapExpr::scale(double s, const CPoint& anchor, const SelfMapExpr& inner) {
    if (!(s > 0.0 && s <= 1.0)) throw ValidationError("scale factor must lie in (0,1]");
    inner.domain().require_dim(anchor);
    if (!(gauge(inner.domain(), anchor) < 1.0)) throw ValidationError("scale anchor must be interior");
    std::ostringstream os;
    os.precision(17);
    os << "scale(" << s << ", " << point_text(anchor) << ")(" << inner.text() << ')';
    return SelfMapExpr(inner.domain(), std::make_shared<ScaleMap>(s, anchor, inner.impl_), os.str());
}

SelfMapExpr SelfMapExpr::compose(const std::vector<SelfMapExpr>& maps) {
    if (maps.empty()) throw Error("compose needs at least one map");
    std::vector<std::shared_ptr<const detail::MapImpl>> impls;
    std::string text;
    for (const auto& m : maps) {
        if (!(m.domain() == maps.front().domain())) throw Error("compose: maps live on different domains");
        impls.push_back(m.impl_);
        text += (text.empty() ? "" : " o ") + ("[" + m.text() + "]");
    }
    return SelfMapExpr(maps.front().domain(), std::make_shared<ComposeMap>(std::move(impls)), text);
}

SelfMapExpr SelfMapExpr::slice(std::size_t j, const CPoint& p) const {
    domain_.require_dim(p);
    if (j >= domain_.dim()) throw Error("slice coordinate out of range");
    return SelfMapExpr(DomainSpec::disk(), std::make_shared<SliceMap>(impl_, j, p),
                       "slice[" + std::to_string(j + 1) + "@" + point_text(p) + "](" + text_ + ")");
}

CPoint SelfMapExpr::evaluate(const CPoint& z) const {
    domain_.require_dim(z);
    return impl_->apply(z);
}

SelfMapExpr parse_map(std::string_view text, const DomainSpec& d, ValidationOptions opts) {
    return SelfMapExpr::parse(text, d, opts);
}

void validate_self_map(const SelfMapExpr& m, ValidationOptions opts) {
    const DomainSpec& d = m.domain();
    Rng rng(opts.seed);
    for (std::size_t i = 0; i < opts.samples; ++i) {
        // Every fourth sample sits on a shell just inside the boundary.
        CPoint z = rng.in_domain(d, 1.0 - 1e-9);
        if (i % 4 == 3) z = rng.in_domain(d, 1.0) , z = z * ((1.0 - 1e-6) / std::max(gauge(d, z), 1e-300));
        const CPoint w = m.evaluate(z);
        if (!w.is_finite() || classify(d, w).region == Region::Exterior) {
            std::ostringstream os;
            os << "not a self-map of " << to_string(d) << ": " << z << " -> " << w;
            throw ValidationError(os.str());
        }
    }
}

}  // namespace wolff
