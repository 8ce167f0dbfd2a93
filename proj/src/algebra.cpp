#include "bowlab/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace bowlab {

// ---------------------------------------------------------------- Scalar

Scalar Scalar::from_decimal_strings(const std::string& num, const std::string& den) {
    mpz_class n, d;
    if (n.set_str(num, 10) != 0) throw UsageError("bad integer literal: " + num);
    if (d.set_str(den, 10) != 0) throw UsageError("bad integer literal: " + den);
    if (sgn(d) == 0) throw UsageError("zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Scalar(f);
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw UsageError("scalar division by zero");
    v_ /= o.v_;
    return *this;
}

Scalar Scalar::pow(int e) const {
    if (e == 0) return Scalar(1);
    if (is_zero()) {
        if (e < 0) throw UsageError("zero to a negative power");
        return Scalar(0);
    }
    mpz_class num, den;
    unsigned ae = static_cast<unsigned>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), ae);
    mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), ae);
    mpq_class q = (e > 0) ? mpq_class(num, den) : mpq_class(den, num);
    q.canonicalize();
    return Scalar(q);
}

Scalar Scalar::inv() const {
    if (is_zero()) throw UsageError("inverting zero");
    return Scalar(mpq_class(v_.get_den(), v_.get_num()));
}

std::string Scalar::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

// ---------------------------------------------------------------- VarSpace

std::shared_ptr<const VarSpace> VarSpace::make(int u_count, int kahler_count,
                                               std::vector<Root> roots, bool with_eps) {
    if (u_count < 0 || kahler_count < 0) throw UsageError("negative variable count");
    auto sp = std::shared_ptr<VarSpace>(new VarSpace());
    sp->u_count_ = u_count;
    sp->kahler_count_ = kahler_count;
    sp->roots_ = std::move(roots);
    sp->has_eps_ = with_eps;
    sp->size_ = u_count + kahler_count + 1 + static_cast<int>(sp->roots_.size()) +
                (with_eps ? 1 : 0);
    return sp;
}

int VarSpace::u_index(int i) const {
    if (i < 1 || i > u_count_) throw UsageError("u index out of range");
    return i - 1;
}

int VarSpace::kahler_index(int i) const {
    if (i < 1 || i > kahler_count_) throw UsageError("kahler index out of range");
    return u_count_ + i - 1;
}

int VarSpace::root_index(int k) const {
    if (k < 0 || k >= static_cast<int>(roots_.size())) throw UsageError("root index out of range");
    return u_count_ + kahler_count_ + 1 + k;
}

int VarSpace::eps_index() const {
    if (!has_eps_) throw UsageError("space has no eps variable");
    return size_ - 1;
}

std::optional<int> VarSpace::find_root(int bundle, int index) const {
    for (size_t k = 0; k < roots_.size(); ++k)
        if (roots_[k].bundle == bundle && roots_[k].index == index)
            return root_index(static_cast<int>(k));
    return std::nullopt;
}

bool VarSpace::is_root_var(int var) const {
    int lo = u_count_ + kahler_count_ + 1;
    return var >= lo && var < lo + static_cast<int>(roots_.size());
}

std::string VarSpace::var_name(int var) const {
    if (var < 0 || var >= size_) throw UsageError("variable out of range");
    if (var < u_count_) return "u" + std::to_string(var + 1);
    var -= u_count_;
    if (var < kahler_count_) return "v" + std::to_string(var + 1);
    var -= kahler_count_;
    if (var == 0) return "h";
    var -= 1;
    if (var < static_cast<int>(roots_.size()))
        return "x" + std::to_string(roots_[var].bundle) + "_" + std::to_string(roots_[var].index);
    return "eps";
}

std::vector<std::string> VarSpace::var_names() const {
    std::vector<std::string> out;
    out.reserve(size_);
    for (int i = 0; i < size_; ++i) out.push_back(var_name(i));
    return out;
}

bool same_space(const VarSpace& a, const VarSpace& b) {
    if (a.u_count_ != b.u_count_ || a.kahler_count_ != b.kahler_count_ ||
        a.has_eps_ != b.has_eps_ || a.roots_.size() != b.roots_.size())
        return false;
    for (size_t i = 0; i < a.roots_.size(); ++i)
        if (a.roots_[i].bundle != b.roots_[i].bundle || a.roots_[i].index != b.roots_[i].index)
            return false;
    return true;
}

void check_same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return;
    if (!a || !b || !same_space(*a, *b)) throw UsageError("mismatched variable spaces");
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::constant(SpacePtr space, const Scalar& c) {
    LaurentPoly p(std::move(space));
    if (!c.is_zero()) p.terms_[ExpVec(p.space_->size(), 0)] = c;
    return p;
}

LaurentPoly LaurentPoly::monomial(SpacePtr space, const ExpVec& exp, const Scalar& c) {
    LaurentPoly p(std::move(space));
    if (exp.size() != static_cast<size_t>(p.space_->size())) throw UsageError("bad exponent vector");
    if (!c.is_zero()) p.terms_[exp] = c;
    return p;
}

LaurentPoly LaurentPoly::variable(SpacePtr space, int var) {
    ExpVec e(space->size(), 0);
    e.at(var) = 1;
    return monomial(std::move(space), e, Scalar(1));
}

void LaurentPoly::add_term(const ExpVec& exp, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(exp);
    if (it == terms_.end()) {
        terms_.emplace(exp, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(space_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    check_same_space(space_, o.space_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    check_same_space(space_, o.space_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    check_same_space(a.space_, b.space_);
    LaurentPoly r(a.space_);
    ExpVec e;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            e = ea;
            for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

LaurentPoly LaurentPoly::scaled(const Scalar& c) const {
    LaurentPoly r(space_);
    if (c.is_zero()) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    check_same_space(a.space_, b.space_);
    return a.terms_ == b.terms_;
}

bool LaurentPoly::has_negative_exponents() const {
    for (const auto& [e, c] : terms_)
        for (int32_t k : e)
            if (k < 0) return true;
    return false;
}

int LaurentPoly::total_degree() const {
    int best = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int32_t k : e) d += k;
        if (first || d > best) best = d;
        first = false;
    }
    return best;
}

bool LaurentPoly::is_homogeneous(int* degree_out) const {
    std::optional<int> deg;
    for (const auto& [e, c] : terms_) {
        int d = 0;
        for (int32_t k : e) d += k;
        if (!deg) deg = d;
        else if (*deg != d) return false;
    }
    if (degree_out) *degree_out = deg.value_or(0);
    return true;
}

std::optional<std::pair<ExpVec, Scalar>> LaurentPoly::as_monomial() const {
    if (terms_.size() != 1) return std::nullopt;
    return *terms_.begin();
}

LaurentPoly LaurentPoly::substitute(const std::map<int, LaurentPoly>& assignment) const {
    // simultaneous substitution: every variable is replaced once, so a
    // self-referencing value like u1 -> u1*h is a plain reparametrization
    for (const auto& [var, val] : assignment) check_same_space(space_, val.space());
    LaurentPoly result(space_);
    // power cache per variable and exponent
    std::map<std::pair<int, int32_t>, LaurentPoly> cache;
    auto power = [&](int var, int32_t k) -> const LaurentPoly& {
        auto key = std::make_pair(var, k);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const LaurentPoly& base = assignment.at(var);
        LaurentPoly value(space_);
        if (k >= 0) {
            value = constant(space_, Scalar(1));
            for (int32_t i = 0; i < k; ++i) value *= base;
        } else {
            auto mono = base.as_monomial();
            if (!mono || mono->second.is_zero())
                throw UsageError("non-invertible substitution");
            ExpVec e = mono->first;
            for (auto& x : e) x *= -1;
            LaurentPoly invb = monomial(space_, e, mono->second.inv());
            value = constant(space_, Scalar(1));
            for (int32_t i = 0; i < -k; ++i) value *= invb;
        }
        return cache.emplace(key, std::move(value)).first->second;
    };
    for (const auto& [e, c] : terms_) {
        ExpVec rest = e;
        LaurentPoly factor = constant(space_, c);
        for (const auto& [var, val] : assignment) {
            int32_t k = e.at(var);
            if (k == 0) continue;
            rest[var] = 0;
            factor *= power(var, k);
        }
        result += monomial(space_, rest, Scalar(1)) * factor;
    }
    return result;
}

std::map<int32_t, LaurentPoly> LaurentPoly::collect(int var) const {
    std::map<int32_t, LaurentPoly> out;
    for (const auto& [e, c] : terms_) {
        int32_t k = e.at(var);
        ExpVec rest = e;
        rest[var] = 0;
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, LaurentPoly(space_)).first;
        it->second.add_term(rest, c);
    }
    return out;
}

LaurentPoly LaurentPoly::at_zero(int var) const {
    LaurentPoly out(space_);
    for (const auto& [e, c] : terms_) {
        if (e.at(var) < 0) throw UsageError("evaluating a pole at zero");
        if (e.at(var) == 0) out.add_term(e, c);
    }
    return out;
}

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Scalar coeff = c;
        if (!first) os << (coeff.sign() >= 0 ? " + " : " - ");
        else if (coeff.sign() < 0) os << "-";
        if (coeff.sign() < 0) coeff = -coeff;
        bool any_var = false;
        std::ostringstream vars;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (any_var) vars << "*";
            vars << space_->var_name(static_cast<int>(i));
            if (e[i] != 1) vars << "^" << e[i];
            any_var = true;
        }
        if (!any_var) {
            os << coeff.str();
        } else {
            if (!coeff.is_one()) os << coeff.str() << "*";
            os << vars.str();
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- LinearForm

LinearForm LinearForm::variable(SpacePtr space, int var) {
    LinearForm f(std::move(space));
    f.coeffs_[var] = Scalar(1);
    return f;
}

LinearForm LinearForm::constant(SpacePtr space, const Scalar& c) {
    LinearForm f(std::move(space));
    f.constant_ = c;
    return f;
}

void LinearForm::set_coeff(int var, const Scalar& c) {
    if (c.is_zero()) coeffs_.erase(var);
    else coeffs_[var] = c;
}

void LinearForm::add_coeff(int var, const Scalar& c) {
    auto it = coeffs_.find(var);
    if (it == coeffs_.end()) {
        if (!c.is_zero()) coeffs_[var] = c;
    } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

Scalar LinearForm::coeff(int var) const {
    auto it = coeffs_.find(var);
    return it == coeffs_.end() ? Scalar(0) : it->second;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    check_same_space(space_, o.space_);
    for (const auto& [v, c] : o.coeffs_) add_coeff(v, c);
    constant_ += o.constant_;
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    check_same_space(space_, o.space_);
    for (const auto& [v, c] : o.coeffs_) add_coeff(v, -c);
    constant_ -= o.constant_;
    return *this;
}

LinearForm LinearForm::scaled(const Scalar& c) const {
    LinearForm r(space_);
    if (c.is_zero()) return r;
    for (const auto& [v, k] : coeffs_) r.coeffs_.emplace(v, k * c);
    r.constant_ = constant_ * c;
    return r;
}

bool operator==(const LinearForm& a, const LinearForm& b) {
    return a.coeffs_ == b.coeffs_ && a.constant_ == b.constant_;
}

std::optional<int> LinearForm::leading_var() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.begin()->first;
}

Scalar LinearForm::normalize() {
    if (is_zero()) return Scalar(1);
    Scalar lead = coeffs_.empty() ? constant_ : coeffs_.begin()->second;
    Scalar inv = lead.inv();
    for (auto& [v, c] : coeffs_) c *= inv;
    constant_ *= inv;
    return lead;
}

LinearForm LinearForm::substitute(const std::map<int, LinearForm>& assignment) const {
    LinearForm out(space_);
    out.constant_ = constant_;
    for (const auto& [v, c] : coeffs_) {
        auto it = assignment.find(v);
        if (it == assignment.end()) {
            out.add_coeff(v, c);
        } else {
            check_same_space(space_, it->second.space());
            for (const auto& [w, k] : it->second.coeffs_) out.add_coeff(w, k * c);
            out.constant_ += it->second.constant_ * c;
        }
    }
    return out;
}

LaurentPoly LinearForm::to_poly() const {
    LaurentPoly p(space_);
    ExpVec e(space_->size(), 0);
    if (!constant_.is_zero()) p.add_term(e, constant_);
    for (const auto& [v, c] : coeffs_) {
        ExpVec ev(space_->size(), 0);
        ev[v] = 1;
        p.add_term(ev, c);
    }
    return p;
}

int LinearForm::cmp(const LinearForm& o) const {
    auto ia = coeffs_.begin();
    auto ib = o.coeffs_.begin();
    while (ia != coeffs_.end() && ib != o.coeffs_.end()) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
        ++ia;
        ++ib;
    }
    if (ia != coeffs_.end()) return 1;
    if (ib != o.coeffs_.end()) return -1;
    if (constant_ != o.constant_) return constant_ < o.constant_ ? -1 : 1;
    return 0;
}

std::string LinearForm::str() const {
    LaurentPoly p = to_poly();
    return p.str();
}

// ------------------------------------------------------- exact linear division

namespace {

// p viewed as a polynomial in f's leading variable; Horner remainder test,
// optionally producing the quotient.
bool divide_linear_impl(const LaurentPoly& p, const LinearForm& f, LaurentPoly* quotient) {
    if (f.is_zero()) throw UsageError("division by the zero form");
    if (p.has_negative_exponents()) throw UsageError("divides_linear needs a polynomial");
    const SpacePtr& sp = p.space();
    if (p.is_zero()) {
        if (quotient) *quotient = LaurentPoly::zero(sp);
        return true;
    }
    auto lead = f.leading_var();
    if (!lead) {
        // nonzero constant divides everything
        if (quotient) *quotient = p.scaled(f.constant_term().inv());
        return true;
    }
    int pivot = *lead;
    Scalar a = f.coeff(pivot);
    LinearForm b = f;
    b.set_coeff(pivot, Scalar(0));
    LaurentPoly bpoly = b.to_poly();

    auto coeffs = p.collect(pivot);
    int32_t top = coeffs.empty() ? 0 : coeffs.rbegin()->first;
    Scalar ainv = a.inv();

    LaurentPoly carry = LaurentPoly::zero(sp);
    LaurentPoly quot(sp);
    ExpVec pe(sp->size(), 0);
    for (int32_t k = top; k >= 1; --k) {
        auto it = coeffs.find(k);
        LaurentPoly pk = (it == coeffs.end()) ? LaurentPoly::zero(sp) : it->second;
        // coefficient of pivot^k in the running remainder
        LaurentPoly qk = (pk + carry).scaled(ainv);
        if (quotient) {
            pe[pivot] = k - 1;
            quot += LaurentPoly::monomial(sp, pe, Scalar(1)) * qk;
            pe[pivot] = 0;
        }
        carry = -(qk * bpoly);
    }
    auto it0 = coeffs.find(0);
    LaurentPoly rem = (it0 == coeffs.end()) ? LaurentPoly::zero(sp) : it0->second;
    rem += carry;
    if (!rem.is_zero()) return false;
    if (quotient) *quotient = std::move(quot);
    return true;
}

}  // namespace

bool divides_linear(const LaurentPoly& p, const LinearForm& f) {
    return divide_linear_impl(p, f, nullptr);
}

std::optional<LaurentPoly> divide_exact_linear(const LaurentPoly& p, const LinearForm& f) {
    LaurentPoly q;
    if (!divide_linear_impl(p, f, &q)) return std::nullopt;
    return q;
}

// ------------------------------------------------------- FactoredRational

FactoredRational FactoredRational::constant(SpacePtr space, const Scalar& c) {
    FactoredRational r(std::move(space));
    r.scalar_ = c;
    return r;
}

void FactoredRational::insert_normalized(LinearForm f, int exp) {
    if (exp == 0) return;
    Scalar lead = f.normalize();
    scalar_ *= lead.pow(exp);
    auto it = std::lower_bound(factors_.begin(), factors_.end(), f,
                               [](const Factor& a, const LinearForm& x) { return a.form.cmp(x) < 0; });
    if (it != factors_.end() && it->form.cmp(f) == 0) {
        it->exp += exp;
        if (it->exp == 0) factors_.erase(it);
    } else {
        factors_.insert(it, Factor{std::move(f), exp});
    }
}

void FactoredRational::mul_form(const LinearForm& f, int exp) {
    if (exp == 0) return;
    check_same_space(space_, f.space());
    if (f.is_zero()) {
        if (exp > 0) zero_num_ += exp;
        else pole_ += -exp;
        return;
    }
    insert_normalized(f, exp);
}

FactoredRational FactoredRational::inverse() const {
    if (scalar_.is_zero() || zero_num_ > 0) throw UsageError("inverting zero");
    FactoredRational r(space_);
    r.scalar_ = scalar_.inv();
    r.factors_ = factors_;
    for (auto& f : r.factors_) f.exp = -f.exp;
    r.pole_ = zero_num_;
    r.zero_num_ = pole_;
    return r;
}

FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) {
    check_same_space(a.space_, b.space_);
    FactoredRational r = a;
    r.scalar_ *= b.scalar_;
    r.zero_num_ += b.zero_num_;
    r.pole_ += b.pole_;
    for (const auto& f : b.factors_) r.insert_normalized(f.form, f.exp);
    return r;
}

FactoredRational FactoredRational::substitute(const std::map<int, LinearForm>& assignment) const {
    FactoredRational r(space_);
    r.scalar_ = scalar_;
    r.zero_num_ = zero_num_;
    r.pole_ = pole_;
    for (const auto& f : factors_) r.mul_form(f.form.substitute(assignment), f.exp);
    return r;
}

FactoredRational FactoredRational::permuted(const std::vector<int>& perm) const {
    FactoredRational r(space_);
    r.scalar_ = scalar_;
    r.zero_num_ = zero_num_;
    r.pole_ = pole_;
    for (const auto& f : factors_) {
        LinearForm g(space_);
        g.add_constant(f.form.constant_term());
        for (const auto& [v, c] : f.form.coeffs()) g.add_coeff(perm.at(v), c);
        r.mul_form(g, f.exp);
    }
    return r;
}

LaurentPoly FactoredRational::expand() const {
    if (pole_ > 0) throw UsageError("expanding a value with a pole");
    if (scalar_.is_zero() || zero_num_ > 0) return LaurentPoly::zero(space_);
    LaurentPoly out = LaurentPoly::constant(space_, scalar_);
    for (const auto& f : factors_) {
        if (f.exp < 0) throw UsageError("expanding a value with denominator factors");
        LaurentPoly fp = f.form.to_poly();
        for (int i = 0; i < f.exp; ++i) out *= fp;
    }
    return out;
}

bool operator==(const FactoredRational& a, const FactoredRational& b) {
    if (a.scalar_ != b.scalar_ || a.zero_num_ != b.zero_num_ || a.pole_ != b.pole_) return false;
    if (a.factors_.size() != b.factors_.size()) return false;
    for (size_t i = 0; i < a.factors_.size(); ++i)
        if (a.factors_[i].exp != b.factors_[i].exp || a.factors_[i].form.cmp(b.factors_[i].form) != 0)
            return false;
    return true;
}

std::string FactoredRational::str() const {
    std::ostringstream os;
    os << scalar_.str();
    if (zero_num_ > 0) os << " * 0^" << zero_num_;
    if (pole_ > 0) os << " * pole^" << pole_;
    for (const auto& f : factors_) {
        os << " * (" << f.form.str() << ")";
        if (f.exp != 1) os << "^" << f.exp;
    }
    return os.str();
}

// ------------------------------------------------------------- symmetrize

namespace {

void all_permutations(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace

std::vector<FactoredRational> symmetrize(const FactoredRational& expr,
                                         const std::vector<std::vector<int>>& blocks) {
    const SpacePtr& sp = expr.space();
    std::vector<char> seen(sp->size(), 0);
    for (const auto& b : blocks) {
        for (int v : b) {
            if (v < 0 || v >= sp->size() || !sp->is_root_var(v))
                throw UsageError("symmetrize blocks must list Chern-root variables");
            if (seen[v]) throw UsageError("symmetrize blocks overlap");
            seen[v] = 1;
        }
    }
    // per-block permutation tables
    std::vector<std::vector<std::vector<int>>> perms(blocks.size());
    for (size_t i = 0; i < blocks.size(); ++i)
        all_permutations(static_cast<int>(blocks[i].size()), perms[i]);

    std::vector<FactoredRational> out;
    std::vector<size_t> idx(blocks.size(), 0);
    while (true) {
        std::vector<int> perm(sp->size());
        for (int v = 0; v < sp->size(); ++v) perm[v] = v;
        for (size_t i = 0; i < blocks.size(); ++i) {
            const auto& blk = blocks[i];
            const auto& p = perms[i][idx[i]];
            for (size_t j = 0; j < blk.size(); ++j) perm[blk[j]] = blk[p[j]];
        }
        out.push_back(expr.permuted(perm));
        // odometer
        size_t k = 0;
        while (k < blocks.size()) {
            if (++idx[k] < perms[k].size()) break;
            idx[k] = 0;
            ++k;
        }
        if (k == blocks.size()) break;
        if (blocks.empty()) break;
    }
    if (blocks.empty() && out.empty()) out.push_back(expr);
    return out;
}

// ------------------------------------------------------------- limit_at_zero

RationalLimit limit_at_zero_rational(const std::vector<FactoredRational>& sum,
                                     LimitStats* stats) {
    if (sum.empty()) throw UsageError("limit of an empty sum");
    SpacePtr sp = sum.front().space();
    if (!sp->has_eps()) throw UsageError("limit_at_zero needs an eps variable");
    int eps = sp->eps_index();

    struct Survivor {
        Scalar scalar;
        int val;  // eps valuation from pure-eps factors
        std::vector<std::pair<LinearForm, int>> factors;  // forms with nonzero A part
    };
    std::vector<Survivor> kept;
    LimitStats st;

    for (const auto& s : sum) {
        ++st.summands_seen;
        check_same_space(sp, s.space());
        if (s.scalar().is_zero()) continue;
        if (s.pole_order() > 0)
            throw ConjectureFailure("limit does not exist (unresolved pole in a summand)");
        if (s.zero_numerator_order() > 0) continue;  // identically zero summand
        Survivor sv;
        sv.scalar = s.scalar();
        sv.val = 0;
        for (const auto& f : s.factors()) {
            bool pure_eps = f.form.coeffs().size() == 1 &&
                            f.form.coeffs().begin()->first == eps &&
                            f.form.constant_term().is_zero();
            if (pure_eps) {
                // normalized pure-eps factor is exactly eps
                sv.val += f.exp;
            } else {
                sv.factors.emplace_back(f.form, f.exp);
            }
        }
        if (sv.val > 0) continue;  // vanishes at eps -> 0
        kept.push_back(std::move(sv));
    }
    st.summands_kept = kept.size();

    if (kept.empty()) {
        if (stats) *stats = st;
        return RationalLimit{LaurentPoly::zero(sp), {}};
    }

    int K = 0;
    for (const auto& s : kept) K = std::max(K, -s.val);
    st.max_pole_order = K;
    st.pole_cancellation = K > 0;

    // common denominator: max multiplicity per (A,B) form over all summands
    std::vector<LinearForm> den_forms;
    std::vector<int> den_mult;
    auto find_den = [&](const LinearForm& f) -> int {
        for (size_t i = 0; i < den_forms.size(); ++i)
            if (den_forms[i].cmp(f) == 0) return static_cast<int>(i);
        return -1;
    };
    for (const auto& s : kept) {
        std::map<int, int> own;
        for (const auto& [form, e] : s.factors) {
            if (e >= 0) continue;
            int id = find_den(form);
            if (id < 0) {
                den_forms.push_back(form);
                den_mult.push_back(0);
                id = static_cast<int>(den_forms.size()) - 1;
            }
            own[id] += -e;
        }
        for (const auto& [id, m] : own) den_mult[id] = std::max(den_mult[id], m);
    }

    // truncated polynomial arithmetic in eps up to degree K:
    // series[k] = coefficient (a LaurentPoly without eps) of eps^k
    auto mul_form_trunc = [&](std::vector<LaurentPoly>& series, const LinearForm& form) {
        // form = A + B*eps
        LinearForm A = form;
        Scalar B = A.coeff(eps);
        A.set_coeff(eps, Scalar(0));
        LaurentPoly Ap = A.to_poly();
        for (int k = K; k >= 0; --k) {
            LaurentPoly next = series[k] * Ap;
            if (k > 0 && !B.is_zero()) next += series[k - 1].scaled(B);
            series[k] = std::move(next);
        }
    };

    std::vector<LaurentPoly> total(K + 1, LaurentPoly::zero(sp));
    for (const auto& s : kept) {
        std::map<int, int> own;
        std::vector<LaurentPoly> series(K + 1, LaurentPoly::zero(sp));
        // shift by eps^(val + K) >= 0
        int shift = s.val + K;
        if (shift > K) continue;  // cannot contribute to orders <= K
        series[shift] = LaurentPoly::constant(sp, s.scalar);
        for (const auto& [form, e] : s.factors) {
            if (e > 0) {
                for (int i = 0; i < e; ++i) mul_form_trunc(series, form);
            } else {
                own[find_den(form)] += -e;
            }
        }
        for (size_t id = 0; id < den_forms.size(); ++id) {
            int missing = den_mult[id] - (own.count(static_cast<int>(id)) ? own[static_cast<int>(id)] : 0);
            for (int i = 0; i < missing; ++i) mul_form_trunc(series, den_forms[id]);
        }
        for (int k = 0; k <= K; ++k) total[k] += series[k];
    }

    for (int k = 0; k < K; ++k)
        if (!total[k].is_zero())
            throw ConjectureFailure("limit does not exist");

    RationalLimit out;
    out.num = total[K];
    for (size_t id = 0; id < den_forms.size(); ++id) {
        LinearForm A = den_forms[id];
        A.set_coeff(eps, Scalar(0));
        if (A.is_zero()) throw ConjectureFailure("limit does not exist");
        if (den_mult[id] > 0) out.den.push_back({A, den_mult[id]});
    }
    if (stats) *stats = st;
    return out;
}

LaurentPoly limit_at_zero(const std::vector<FactoredRational>& sum, LimitStats* stats) {
    RationalLimit rl = limit_at_zero_rational(sum, stats);
    LaurentPoly value = std::move(rl.num);
    for (const auto& [form, mult] : rl.den) {
        for (int i = 0; i < mult; ++i) {
            auto q = divide_exact_linear(value, form);
            if (!q) throw ConjectureFailure("limit exists but is not a polynomial");
            value = std::move(*q);
        }
    }
    return value;
}

long nth_prime(int n) {
    if (n < 1) throw UsageError("prime index must be positive");
    static std::vector<long> primes = {2, 3};
    while (static_cast<int>(primes.size()) < n) {
        long cand = primes.back() + 2;
        while (true) {
            bool ok = true;
            for (long p : primes) {
                if (p * p > cand) break;
                if (cand % p == 0) { ok = false; break; }
            }
            if (ok) break;
            cand += 2;
        }
        primes.push_back(cand);
    }
    return primes[n - 1];
}

}  // namespace bowlab
