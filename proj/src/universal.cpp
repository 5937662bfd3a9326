#include "nambu/universal.hpp"

#include <algorithm>
#include <stdexcept>

namespace nambu {

SuperSpace::SuperSpace(const Signature& sig) : sig_(sig) {
    basis_ = monomial_grid(sig, sig.truncation, sig.odd_total());
    pbar_.reserve(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        index_.emplace(basis_[i], i);
        pbar_.push_back((basis_[i].parity() + 1) & 1);
        if (basis_[i].xdeg() == 0 && basis_[i].mask == 0) unit_ = i;
    }
    product_.assign(basis_.size(), std::vector<QVector>(basis_.size()));
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Element ei = Element::monomial(sig_, basis_[i], Rational(1));
        for (std::size_t j = 0; j < basis_.size(); ++j) {
            Element ej = Element::monomial(sig_, basis_[j], Rational(1));
            product_[i][j] = vec_of(ei * ej);
        }
    }
}

std::shared_ptr<const SuperSpace> SuperSpace::from_signature(const Signature& sig) {
    sig.validate();
    auto sp = std::shared_ptr<SuperSpace>(new SuperSpace(sig));
    return sp;
}

std::shared_ptr<const SuperSpace> SuperSpace::grassmann(int n) {
    return from_signature(Signature{0, n, false, 0});
}

std::string SuperSpace::label(std::size_t i) const {
    return Element::monomial(sig_, basis_[i], Rational(1)).render();
}

QVector SuperSpace::vec_of(const Element& e) const {
    if (!e.signature().same_variables(sig_))
        throw std::invalid_argument("SuperSpace::vec_of: signature mismatch");
    QVector v(dim(), Rational(0));
    for (const auto& [m, c] : e.terms()) {
        auto it = index_.find(m);
        if (it == index_.end())
            throw std::invalid_argument("SuperSpace::vec_of: monomial outside the basis");
        v[it->second] = c;
    }
    return v;
}

Element SuperSpace::elem_of(const QVector& v) const {
    Element e(sig_);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) e.add_term(basis_[i], v[i]);
    return e;
}

QVector SuperSpace::mul(const QVector& a, const QVector& b) const {
    QVector out(dim(), Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j].is_zero()) continue;
            const QVector& pij = product_[i][j];
            Rational c = a[i] * b[j];
            for (std::size_t t = 0; t < dim(); ++t)
                if (!pij[t].is_zero()) out[t] += c * pij[t];
        }
    }
    return out;
}

int SuperSpace::vec_pbar(const QVector& v) const {
    int p = -1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (p == -1)
            p = pbar_[i];
        else if (p != pbar_[i])
            return -1;
    }
    return p;
}

MultiMap::MultiMap(SpacePtr space, int arity, int pbar)
    : space_(std::move(space)), arity_(arity), pbar_(pbar & 1) {
    if (arity_ < 0) throw std::invalid_argument("MultiMap: negative arity");
}

MultiMap MultiMap::element(SpacePtr space, const QVector& v) {
    int pb = space->vec_pbar(v);
    MultiMap m(space, 0, pb == -1 ? 0 : pb);
    bool zero = true;
    for (const auto& c : v)
        if (!c.is_zero()) zero = false;
    if (!zero) m.table_.emplace(std::vector<int>{}, v);
    return m;
}

MultiMap MultiMap::element(SpacePtr space, const Element& e) {
    QVector v = space->vec_of(e);
    return element(std::move(space), v);
}

MultiMap MultiMap::unit(SpacePtr space) {
    QVector v(space->dim(), Rational(0));
    v[space->unit_index()] = Rational(1);
    return element(std::move(space), v);
}

bool MultiMap::is_zero() const { return table_.empty(); }

void MultiMap::set(const std::vector<int>& key, QVector value) {
    if (static_cast<int>(key.size()) != arity_)
        throw std::invalid_argument("MultiMap::set: key length mismatch");
    bool zero = true;
    for (const auto& c : value)
        if (!c.is_zero()) zero = false;
    if (zero)
        table_.erase(key);
    else
        table_[key] = std::move(value);
}

QVector MultiMap::eval_basis(const std::vector<int>& idx) const {
    if (static_cast<int>(idx.size()) != arity_)
        throw std::invalid_argument("MultiMap::eval_basis: arity mismatch");
    std::vector<int> key = idx;
    int sign = 1;
    // insertion sort, tracking Koszul swaps of Pi-odd arguments
    for (std::size_t i = 1; i < key.size(); ++i) {
        for (std::size_t j = i; j > 0 && key[j - 1] > key[j]; --j) {
            if (space_->pbar(key[j - 1]) && space_->pbar(key[j])) sign = -sign;
            std::swap(key[j - 1], key[j]);
        }
    }
    for (std::size_t i = 1; i < key.size(); ++i)
        if (key[i] == key[i - 1] && space_->pbar(key[i]))
            return QVector(space_->dim(), Rational(0));
    auto it = table_.find(key);
    if (it == table_.end()) return QVector(space_->dim(), Rational(0));
    QVector v = it->second;
    if (sign < 0)
        for (auto& c : v) c = -c;
    return v;
}

QVector MultiMap::eval(const std::vector<QVector>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("MultiMap::eval: arity mismatch");
    QVector out(space_->dim(), Rational(0));
    std::vector<int> idx(args.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos, Rational coeff) -> void {
        if (pos == args.size()) {
            QVector v = eval_basis(idx);
            for (std::size_t t = 0; t < out.size(); ++t)
                if (!v[t].is_zero()) out[t] += coeff * v[t];
            return;
        }
        for (std::size_t j = 0; j < space_->dim(); ++j) {
            if (args[pos][j].is_zero()) continue;
            idx[pos] = static_cast<int>(j);
            self(self, pos + 1, coeff * args[pos][j]);
        }
    };
    rec(rec, 0, Rational(1));
    return out;
}

namespace {

void require_compatible(const MultiMap& a, const MultiMap& b) {
    if (a.space() != b.space() || a.arity() != b.arity())
        throw std::invalid_argument("MultiMap: incompatible operands");
}

bool vec_zero(const QVector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

}  // namespace

MultiMap MultiMap::operator+(const MultiMap& o) const {
    require_compatible(*this, o);
    MultiMap r = *this;
    for (const auto& [k, v] : o.table_) {
        QVector cur = r.eval_basis(k);
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] += v[i];
        r.set(k, std::move(cur));
    }
    return r;
}

MultiMap MultiMap::operator-(const MultiMap& o) const { return *this + o.scaled(Rational(-1)); }

MultiMap MultiMap::scaled(const Rational& c) const {
    MultiMap r(space_, arity_, pbar_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : table_) {
        QVector w = v;
        for (auto& t : w) t *= c;
        r.table_.emplace(k, std::move(w));
    }
    return r;
}

bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.space_ == b.space_ && a.arity_ == b.arity_ && a.table_ == b.table_;
}

int shuffle_sign(const std::vector<int>& positions, const std::vector<int>& pbars) {
    int inv = 0;
    for (std::size_t s = 0; s < positions.size(); ++s)
        for (std::size_t t = s + 1; t < positions.size(); ++t)
            if (positions[s] > positions[t] && pbars[positions[s]] && pbars[positions[t]]) ++inv;
    return (inv & 1) ? -1 : 1;
}

std::vector<std::vector<int>> canonical_keys(const SuperSpace& space, int length) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == length) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < static_cast<int>(space.dim()); ++i) {
            if (!cur.empty() && cur.back() == i && space.pbar(i)) continue;
            cur.push_back(i);
            self(self, i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

// ascending subsets of {0..n-1} of the given size
void for_each_subset(int n, int size, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> sel(size);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == size) {
            fn(sel);
            return;
        }
        for (int i = start; i <= n - (size - pos); ++i) {
            sel[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    if (size == 0) {
        fn(std::vector<int>{});
        return;
    }
    rec(rec, 0, 0);
}

}  // namespace

MultiMap box(const MultiMap& x, const MultiMap& y) {
    if (x.space() != y.space()) throw std::invalid_argument("box: different spaces");
    int p = x.degree(), q = y.degree();
    if (p + q < -1) throw std::invalid_argument("box: resulting degree below -1");
    MultiMap r(x.space(), p + q + 1, (x.pbar() + y.pbar()) & 1);
    if (p == -1) return r;  // elements act trivially on the left
    const SuperSpace& sp = *x.space();
    int arity = p + q + 1;
    for (const auto& key : canonical_keys(sp, arity)) {
        std::vector<int> pbs(arity);
        for (int i = 0; i < arity; ++i) pbs[i] = sp.pbar(key[i]);
        QVector acc(sp.dim(), Rational(0));
        for_each_subset(arity, q + 1, [&](const std::vector<int>& s) {
            std::vector<int> positions = s;
            std::vector<bool> used(arity, false);
            for (int i : s) used[i] = true;
            for (int i = 0; i < arity; ++i)
                if (!used[i]) positions.push_back(i);
            int sign = shuffle_sign(positions, pbs);
            std::vector<int> yargs;
            for (int i : s) yargs.push_back(key[i]);
            QVector yv = y.eval_basis(yargs);
            if (vec_zero(yv)) return;
            std::vector<int> xargs(1, 0);
            for (int i = 0; i < arity; ++i)
                if (!used[i]) xargs.push_back(key[i]);
            for (std::size_t j = 0; j < sp.dim(); ++j) {
                if (yv[j].is_zero()) continue;
                xargs[0] = static_cast<int>(j);
                QVector xv = x.eval_basis(xargs);
                Rational c = yv[j];
                if (sign < 0) c = -c;
                for (std::size_t t = 0; t < sp.dim(); ++t)
                    if (!xv[t].is_zero()) acc[t] += c * xv[t];
            }
        });
        r.set(key, std::move(acc));
    }
    return r;
}

MultiMap w_bracket(const MultiMap& x, const MultiMap& y) {
    if (x.degree() + y.degree() < -1)
        throw std::invalid_argument("w_bracket: resulting degree below -1");
    MultiMap xy = box(x, y);
    MultiMap yx = box(y, x);
    return ((x.pbar() * y.pbar()) & 1) ? xy + yx : xy - yx;
}

MultiMap concat(const MultiMap& x, const MultiMap& y) {
    if (x.space() != y.space()) throw std::invalid_argument("concat: different spaces");
    const SuperSpace& sp = *x.space();
    int h = x.arity(), k = y.arity();
    int arity = h + k;
    int py = y.underlying_parity();
    MultiMap r(x.space(), arity, (x.pbar() + y.pbar() + 1) & 1);
    for (const auto& key : canonical_keys(sp, arity)) {
        std::vector<int> pbs(arity);
        for (int i = 0; i < arity; ++i) pbs[i] = sp.pbar(key[i]);
        QVector acc(sp.dim(), Rational(0));
        for_each_subset(arity, h, [&](const std::vector<int>& s) {
            std::vector<int> positions = s;
            std::vector<bool> used(arity, false);
            for (int i : s) used[i] = true;
            for (int i = 0; i < arity; ++i)
                if (!used[i]) positions.push_back(i);
            int sign = shuffle_sign(positions, pbs);
            if (py) {
                int sum = 0;
                for (int i : s) sum += pbs[i];
                if (sum & 1) sign = -sign;
            }
            std::vector<int> xargs, yargs;
            for (int i : s) xargs.push_back(key[i]);
            for (int i = 0; i < arity; ++i)
                if (!used[i]) yargs.push_back(key[i]);
            QVector xv = x.eval_basis(xargs);
            if (vec_zero(xv)) return;
            QVector yv = y.eval_basis(yargs);
            if (vec_zero(yv)) return;
            QVector prod = sp.mul(xv, yv);
            for (std::size_t t = 0; t < sp.dim(); ++t) {
                if (prod[t].is_zero()) continue;
                acc[t] += (sign < 0) ? -prod[t] : prod[t];
            }
        });
        r.set(key, std::move(acc));
    }
    return r;
}

namespace {

IdentityReport leibniz_scan(const MultiMap& x, bool guard, const std::string& name) {
    const SuperSpace& sp = *x.space();
    int lead_len = x.arity() - 1;
    QVector unit(sp.dim(), Rational(0));
    unit[sp.unit_index()] = Rational(1);
    for (const auto& lead : canonical_keys(sp, lead_len)) {
        for (std::size_t b = 0; b < sp.dim(); ++b) {
            for (std::size_t c = 0; c < sp.dim(); ++c) {
                if (guard && !sp.product_exact(b, c)) continue;
                const QVector& bc = sp.basis_product(b, c);
                std::vector<int> args = lead;
                args.push_back(0);
                // X(lead, bc), expanded linearly over bc
                QVector lhs(sp.dim(), Rational(0));
                for (std::size_t j = 0; j < sp.dim(); ++j) {
                    if (bc[j].is_zero()) continue;
                    args.back() = static_cast<int>(j);
                    QVector v = x.eval_basis(args);
                    for (std::size_t t = 0; t < sp.dim(); ++t)
                        if (!v[t].is_zero()) lhs[t] += bc[j] * v[t];
                }
                args.back() = static_cast<int>(b);
                QVector xb = x.eval_basis(args);
                args.back() = static_cast<int>(c);
                QVector xc = x.eval_basis(args);
                args.back() = static_cast<int>(sp.unit_index());
                QVector x1 = x.eval_basis(args);

                QVector ec(sp.dim(), Rational(0)), eb(sp.dim(), Rational(0));
                ec[c] = Rational(1);
                eb[b] = Rational(1);
                QVector r1 = sp.mul(xb, ec);
                QVector r2 = sp.mul(xc, eb);
                QVector r3 = sp.mul(x1, bc);
                int sgn = sp.underlying_parity(b) * sp.underlying_parity(c);
                QVector res(sp.dim(), Rational(0));
                for (std::size_t t = 0; t < sp.dim(); ++t) {
                    res[t] = lhs[t] - r1[t] + r3[t];
                    res[t] = sgn ? res[t] + r2[t] : res[t] - r2[t];
                }
                if (!vec_zero(res)) {
                    std::vector<Element> inputs;
                    for (int i : lead)
                        inputs.push_back(Element::monomial(sp.signature(), sp.basis()[i], Rational(1)));
                    inputs.push_back(Element::monomial(sp.signature(), sp.basis()[b], Rational(1)));
                    inputs.push_back(Element::monomial(sp.signature(), sp.basis()[c], Rational(1)));
                    return IdentityReport::fail(name, {std::move(inputs), sp.elem_of(res)});
                }
            }
        }
    }
    return IdentityReport::pass(name);
}

}  // namespace

IdentityReport is_generalized_derivation(const MultiMap& x) {
    if (x.arity() != 1)
        throw std::invalid_argument("is_generalized_derivation: needs a degree-0 map");
    return leibniz_scan(x, false, "generalized-derivation");
}

IdentityReport gw_membership(const MultiMap& x) {
    if (x.arity() == 0) return IdentityReport::pass("gw-membership");
    return leibniz_scan(x, true, "gw-membership");
}

namespace {

std::optional<MultiMap> safe_box(const MultiMap& a, const MultiMap& b) {
    if (a.degree() == -1) return std::nullopt;       // elements act trivially
    if (a.degree() + b.degree() < -1) return std::nullopt;
    return box(a, b);
}

std::optional<MultiMap> maybe_concat(const std::optional<MultiMap>& a, const MultiMap& b) {
    if (!a) return std::nullopt;
    return concat(*a, b);
}

std::optional<MultiMap> maybe_concat(const MultiMap& a, const std::optional<MultiMap>& b) {
    if (!b) return std::nullopt;
    return concat(a, *b);
}

// sum of optional terms with signs; nullopt contributes nothing
std::optional<MultiMap> accumulate(std::vector<std::pair<int, std::optional<MultiMap>>> terms) {
    std::optional<MultiMap> acc;
    for (auto& [sgn, t] : terms) {
        if (!t) continue;
        MultiMap v = sgn < 0 ? t->scaled(Rational(-1)) : *t;
        if (!acc)
            acc = std::move(v);
        else
            acc = *acc + v;
    }
    return acc;
}

IdentityReport map_report(const std::string& name, const std::optional<MultiMap>& residual) {
    if (!residual || residual->is_zero()) return IdentityReport::pass(name);
    const SuperSpace& sp = *residual->space();
    const auto& [key, value] = *residual->table().begin();
    std::vector<Element> inputs;
    for (int i : key) inputs.push_back(Element::monomial(sp.signature(), sp.basis()[i], Rational(1)));
    return IdentityReport::fail(name, {std::move(inputs), sp.elem_of(value)});
}

}  // namespace

IdentityReport verify_uogp_laws(const MultiMap& x, const MultiMap& y, const MultiMap& z) {
    if (x.space() != y.space() || y.space() != z.space())
        throw std::invalid_argument("verify_uogp_laws: different spaces");
    if (x.degree() + y.degree() + z.degree() + 1 < -1)
        throw std::invalid_argument("verify_uogp_laws: incompatible degrees");
    MultiMap one = MultiMap::unit(x.space());

    int s1 = (x.pbar() * y.underlying_parity()) & 1;
    auto lhs1 = safe_box(x, concat(y, z));
    auto t11 = maybe_concat(safe_box(x, y), z);
    auto t12 = maybe_concat(y, safe_box(x, z));
    auto t13 = maybe_concat(maybe_concat(safe_box(x, one), y), z);
    auto res1 = accumulate({{+1, lhs1},
                            {-1, t11},
                            {s1 ? +1 : -1, t12},
                            {+1, t13}});
    IdentityReport r1 = map_report("uogp-box-over-concat", res1);
    if (!r1.passed) return r1;

    int s2 = (y.underlying_parity() * z.pbar()) & 1;
    auto lhs2 = safe_box(concat(x, y), z);
    auto t21 = maybe_concat(x, safe_box(y, z));
    auto t22 = maybe_concat(safe_box(x, z), y);
    auto res2 = accumulate({{+1, lhs2},
                            {-1, t21},
                            {s2 ? +1 : -1, t22}});
    return map_report("uogp-concat-box", res2);
}

IdentityReport check_bracket_skew_on_basis(const SpacePtr& space, const NaryBracket& bracket,
                                           int arity) {
    const SuperSpace& sp = *space;
    auto elem_at = [&](int i) { return Element::monomial(sp.signature(), sp.basis()[i], Rational(1)); };
    for (const auto& key : canonical_keys(sp, arity)) {
        std::vector<Element> args;
        for (int i : key) args.push_back(elem_at(i));
        Element base = bracket(args);
        for (int t = 0; t + 1 < arity; ++t) {
            if (key[t] == key[t + 1]) continue;
            std::vector<Element> swapped = args;
            std::swap(swapped[t], swapped[t + 1]);
            int sign = (sp.pbar(key[t]) * sp.pbar(key[t + 1])) & 1;
            Element flip = bracket(swapped);
            Element res = sign ? base + flip : base - flip;
            if (!res.is_zero())
                return IdentityReport::fail("table-skew", {std::move(swapped), std::move(res)});
        }
    }
    // repeated Pi-odd arguments must vanish
    if (arity >= 2) {
        for (std::size_t i = 0; i < sp.dim(); ++i) {
            if (!sp.pbar(i)) continue;
            std::vector<Element> args(arity, Element::one(sp.signature()));
            args[0] = elem_at(static_cast<int>(i));
            args[1] = elem_at(static_cast<int>(i));
            Element v = bracket(args);
            if (!v.is_zero())
                return IdentityReport::fail("table-skew", {std::move(args), std::move(v)});
        }
    }
    return IdentityReport::pass("table-skew");
}

MultiMap mu_from_nambu(const SpacePtr& space, const NaryBracket& bracket, int arity) {
    IdentityReport skew = check_bracket_skew_on_basis(space, bracket, arity);
    if (!skew.passed)
        throw std::domain_error("mu_from_nambu: bracket fails skew-symmetry on the basis: " +
                                skew.to_json());
    const SuperSpace& sp = *space;
    int pb = -1;
    std::map<std::vector<int>, QVector> entries;
    for (const auto& key : canonical_keys(sp, arity)) {
        std::vector<Element> args;
        for (int i : key) args.push_back(Element::monomial(sp.signature(), sp.basis()[i], Rational(1)));
        QVector v = sp.vec_of(bracket(args));
        bool zero = vec_zero(v);
        if (!zero && pb == -1) {
            int out = sp.vec_pbar(v);
            if (out != -1) {
                int s = out;
                for (int i : key) s += sp.pbar(i);
                pb = s & 1;
            }
        }
        if (!zero) entries.emplace(key, std::move(v));
    }
    MultiMap result(space, arity, pb == -1 ? (arity + 1) & 1 : pb);
    for (auto& [k, v] : entries) result.set(k, std::move(v));
    return result;
}

std::vector<MultiMap> gw_as_basis(const SpacePtr& space, int degree, int pbar) {
    const SuperSpace& sp = *space;
    pbar &= 1;
    if (degree < -1) throw std::invalid_argument("gw_as_basis: degree below -1");
    if (degree == -1) {
        std::vector<MultiMap> out;
        for (std::size_t i = 0; i < sp.dim(); ++i) {
            if (sp.pbar(i) != pbar) continue;
            QVector v(sp.dim(), Rational(0));
            v[i] = Rational(1);
            out.push_back(MultiMap::element(space, v));
        }
        return out;
    }
    int arity = degree + 1;
    auto keys = canonical_keys(sp, arity);

    // unknown columns: (key, output basis index) with parity-compatible output
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> col_of;
    std::vector<std::pair<std::size_t, std::size_t>> cols;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        int ps = pbar;
        for (int i : keys[k]) ps += sp.pbar(i);
        for (std::size_t j = 0; j < sp.dim(); ++j) {
            if (sp.pbar(j) != (ps & 1)) continue;
            col_of[{k, j}] = cols.size();
            cols.emplace_back(k, j);
        }
    }
    std::map<std::vector<int>, std::size_t> key_index;
    for (std::size_t k = 0; k < keys.size(); ++k) key_index.emplace(keys[k], k);

    // A-valued linear form in the unknowns: per basis coordinate, a sparse
    // row over unknown columns
    using Form = std::vector<std::map<std::size_t, Rational>>;
    auto form_of_tuple = [&](std::vector<int> idx) -> Form {
        Form f(sp.dim());
        int sign = 1;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
                if (sp.pbar(idx[j - 1]) && sp.pbar(idx[j])) sign = -sign;
                std::swap(idx[j - 1], idx[j]);
            }
        }
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (idx[i] == idx[i - 1] && sp.pbar(idx[i])) return f;
        auto it = key_index.find(idx);
        if (it == key_index.end()) return f;
        for (std::size_t j = 0; j < sp.dim(); ++j) {
            auto c = col_of.find({it->second, j});
            if (c != col_of.end()) f[j][c->second] = Rational(sign);
        }
        return f;
    };
    auto form_add = [&](Form& a, const Form& b, const Rational& c) {
        for (std::size_t i = 0; i < a.size(); ++i)
            for (const auto& [col, v] : b[i]) {
                a[i][col] += c * v;
                if (a[i][col].is_zero()) a[i].erase(col);
            }
    };
    // right-multiply an A-valued form by a known vector of A
    auto form_mul = [&](const Form& f, const QVector& v) -> Form {
        Form out(sp.dim());
        for (std::size_t a = 0; a < sp.dim(); ++a) {
            if (f[a].empty()) continue;
            QVector ea(sp.dim(), Rational(0));
            ea[a] = Rational(1);
            QVector w = sp.mul(ea, v);
            for (std::size_t t = 0; t < sp.dim(); ++t) {
                if (w[t].is_zero()) continue;
                for (const auto& [col, c] : f[a]) {
                    out[t][col] += c * w[t];
                    if (out[t][col].is_zero()) out[t].erase(col);
                }
            }
        }
        return out;
    };

    std::vector<QVector> rows;
    auto push_rows = [&](const Form& f) {
        for (std::size_t t = 0; t < sp.dim(); ++t) {
            if (f[t].empty()) continue;
            QVector row(cols.size(), Rational(0));
            for (const auto& [col, c] : f[t]) row[col] = c;
            rows.push_back(std::move(row));
        }
    };

    QVector unit_vec(sp.dim(), Rational(0));
    unit_vec[sp.unit_index()] = Rational(1);
    for (const auto& lead : canonical_keys(sp, arity - 1)) {
        for (std::size_t b = 0; b < sp.dim(); ++b) {
            for (std::size_t c = 0; c < sp.dim(); ++c) {
                const QVector& bc = sp.basis_product(b, c);
                std::vector<int> tup = lead;
                tup.push_back(0);
                Form lhs(sp.dim());
                for (std::size_t j = 0; j < sp.dim(); ++j) {
                    if (bc[j].is_zero()) continue;
                    tup.back() = static_cast<int>(j);
                    form_add(lhs, form_of_tuple(tup), bc[j]);
                }
                tup.back() = static_cast<int>(b);
                Form xb = form_of_tuple(tup);
                tup.back() = static_cast<int>(c);
                Form xc = form_of_tuple(tup);
                tup.back() = static_cast<int>(sp.unit_index());
                Form x1 = form_of_tuple(tup);

                QVector ec(sp.dim(), Rational(0)), eb(sp.dim(), Rational(0));
                ec[c] = Rational(1);
                eb[b] = Rational(1);
                int sgn = sp.underlying_parity(b) * sp.underlying_parity(c);
                form_add(lhs, form_mul(xb, ec), Rational(-1));
                form_add(lhs, form_mul(xc, eb), Rational(sgn ? 1 : -1));
                form_add(lhs, form_mul(x1, bc), Rational(1));
                push_rows(lhs);
            }
        }
    }

    std::vector<MultiMap> out;
    for (const auto& sol : nullspace(std::move(rows), cols.size())) {
        MultiMap m(space, arity, pbar);
        std::map<std::size_t, QVector> by_key;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (sol[c].is_zero()) continue;
            auto [k, j] = cols[c];
            auto it = by_key.find(k);
            if (it == by_key.end()) it = by_key.emplace(k, QVector(sp.dim(), Rational(0))).first;
            it->second[j] = sol[c];
        }
        for (auto& [k, v] : by_key) m.set(keys[k], std::move(v));
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace nambu
