#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bowlab {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a computation contradicts a theorem-level identity.
struct IntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Raised when a Conjecture instance fails (limit missing / not polynomial).
struct ConjectureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational scalar. Canonical form (gcd 1, positive denominator) is
/// maintained by GMP's mpq layer.
class Scalar {
public:
    Scalar() : v_(0) {}
    Scalar(long n) : v_(n) {}
    Scalar(long n, unsigned long d) : v_(n, d) { v_.canonicalize(); }
    explicit Scalar(const mpq_class& q) : v_(q) { v_.canonicalize(); }
    explicit Scalar(const mpz_class& z) : v_(z) {}

    static Scalar from_decimal_strings(const std::string& num, const std::string& den);
    static Scalar factorial(unsigned n);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }

    Scalar operator-() const { return Scalar(mpq_class(-v_)); }
    Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
    Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
    Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return a.v_ != b.v_; }
    friend bool operator<(const Scalar& a, const Scalar& b) { return a.v_ < b.v_; }

    Scalar pow(int e) const;
    Scalar inv() const;

    std::string num_string() const { return v_.get_num().get_str(); }
    std::string den_string() const { return v_.get_den().get_str(); }
    std::string str() const;
    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

/// Variable universe for one diagram-scale computation. Order of variables is
/// fixed: u_1..u_n < v_1..v_m < h < Chern roots < eps.
class VarSpace {
public:
    struct Root {
        int bundle;  // interior D3 brane index, 1-based
        int index;   // root index within the bundle, 1-based
    };

    static std::shared_ptr<const VarSpace> make(int u_count, int kahler_count,
                                                std::vector<Root> roots, bool with_eps);

    int u_count() const { return u_count_; }
    int kahler_count() const { return kahler_count_; }
    const std::vector<Root>& roots() const { return roots_; }
    bool has_eps() const { return has_eps_; }

    int size() const { return size_; }
    int u_index(int i) const;       // i is 1-based
    int kahler_index(int i) const;  // 1-based
    int h_index() const { return u_count_ + kahler_count_; }
    int root_index(int k) const;    // k is 0-based position into roots()
    int eps_index() const;
    std::optional<int> find_root(int bundle, int index) const;

    bool is_root_var(int var) const;
    bool is_u_var(int var) const { return var >= 0 && var < u_count_; }

    std::string var_name(int var) const;
    std::vector<std::string> var_names() const;

    friend bool same_space(const VarSpace& a, const VarSpace& b);

private:
    VarSpace() = default;
    int u_count_ = 0;
    int kahler_count_ = 0;
    std::vector<Root> roots_;
    bool has_eps_ = false;
    int size_ = 0;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

void check_same_space(const SpacePtr& a, const SpacePtr& b);

using ExpVec = std::vector<int32_t>;

/// Sparse multivariate Laurent polynomial with exact rational coefficients.
/// Terms are kept in lexicographic exponent order; no zero coefficients stored.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(SpacePtr space) : space_(std::move(space)) {}

    static LaurentPoly zero(SpacePtr space) { return LaurentPoly(std::move(space)); }
    static LaurentPoly constant(SpacePtr space, const Scalar& c);
    static LaurentPoly monomial(SpacePtr space, const ExpVec& exp, const Scalar& c);
    static LaurentPoly variable(SpacePtr space, int var);

    const SpacePtr& space() const { return space_; }
    const std::map<ExpVec, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    void add_term(const ExpVec& exp, const Scalar& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator*=(const LaurentPoly& o) { *this = *this * o; return *this; }
    LaurentPoly scaled(const Scalar& c) const;
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    bool has_negative_exponents() const;
    /// Largest total degree over the given variables (0 for the zero polynomial).
    int total_degree() const;
    bool is_homogeneous(int* degree_out = nullptr) const;
    /// Single-term test; returns the term if so.
    std::optional<std::pair<ExpVec, Scalar>> as_monomial() const;

    /// Substitute variables by polynomials. A variable occurring with negative
    /// exponent may only receive a (single-term) monomial.
    LaurentPoly substitute(const std::map<int, LaurentPoly>& assignment) const;

    /// Coefficient extraction along one variable (exponent -> rest).
    std::map<int32_t, LaurentPoly> collect(int var) const;
    /// Set one variable to zero (drops terms with nonzero exponent on it;
    /// errors on negative exponents of that variable).
    LaurentPoly at_zero(int var) const;

    std::string str() const;

private:
    SpacePtr space_;
    std::map<ExpVec, Scalar> terms_;
};

/// Linear form c0 + sum c_i * x_i over a VarSpace.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(SpacePtr space) : space_(std::move(space)) {}

    static LinearForm variable(SpacePtr space, int var);
    static LinearForm constant(SpacePtr space, const Scalar& c);

    const SpacePtr& space() const { return space_; }
    const std::map<int, Scalar>& coeffs() const { return coeffs_; }
    const Scalar& constant_term() const { return constant_; }
    bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }
    bool is_constant() const { return coeffs_.empty(); }

    void set_coeff(int var, const Scalar& c);
    void add_coeff(int var, const Scalar& c);
    void add_constant(const Scalar& c) { constant_ += c; }
    Scalar coeff(int var) const;

    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    LinearForm scaled(const Scalar& c) const;
    friend bool operator==(const LinearForm& a, const LinearForm& b);

    /// First variable (in global order) with a nonzero coefficient.
    std::optional<int> leading_var() const;
    /// Divides by the leading coefficient (or the constant if no variables);
    /// returns that normalizer. Zero form is unchanged and returns 1.
    Scalar normalize();

    LinearForm substitute(const std::map<int, LinearForm>& assignment) const;
    LaurentPoly to_poly() const;
    /// Compare by (coeffs, constant) for canonical ordering.
    int cmp(const LinearForm& o) const;

    std::string str() const;

private:
    SpacePtr space_;
    std::map<int, Scalar> coeffs_;
    Scalar constant_;
};

/// Exact division test of a polynomial by a linear form.
bool divides_linear(const LaurentPoly& p, const LinearForm& f);
std::optional<LaurentPoly> divide_exact_linear(const LaurentPoly& p, const LinearForm& f);

/// scalar * prod_i form_i ^ exp_i, forms kept unexpanded. Proportional factors
/// merge under canonicalization; identically-zero numerator factors collapse
/// the value to 0, zero denominator factors are flagged as poles.
class FactoredRational {
public:
    FactoredRational() = default;
    explicit FactoredRational(SpacePtr space)
        : space_(std::move(space)), scalar_(1) {}

    static FactoredRational constant(SpacePtr space, const Scalar& c);

    const SpacePtr& space() const { return space_; }
    const Scalar& scalar() const { return scalar_; }
    void set_scalar(const Scalar& c) { scalar_ = c; }

    struct Factor {
        LinearForm form;  // normalized: leading coefficient 1
        int exp;
    };
    const std::vector<Factor>& factors() const { return factors_; }

    /// Count of vanished numerator factors (with multiplicity) and vanished
    /// denominator factors (pole order). Both zero for generic values.
    int zero_numerator_order() const { return zero_num_; }
    int pole_order() const { return pole_; }
    bool is_zero() const { return scalar_.is_zero() || (zero_num_ > 0 && pole_ == 0); }

    void mul_form(const LinearForm& f, int exp);
    void mul_scalar(const Scalar& c) { scalar_ *= c; }
    FactoredRational inverse() const;
    friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b);

    FactoredRational substitute(const std::map<int, LinearForm>& assignment) const;
    /// Relabel variables through a permutation (old var -> new var).
    FactoredRational permuted(const std::vector<int>& perm) const;

    /// Expand into a LaurentPoly; requires no denominator factors and no pole.
    LaurentPoly expand() const;

    friend bool operator==(const FactoredRational& a, const FactoredRational& b);

    std::string str() const;

private:
    SpacePtr space_;
    Scalar scalar_;
    std::vector<Factor> factors_;
    int zero_num_ = 0;
    int pole_ = 0;
    void insert_normalized(LinearForm f, int exp);
};

/// All block-wise permutations of the given Chern-root variables.
/// Returns prod_i (|block_i|!) summands; no algebraic simplification.
std::vector<FactoredRational> symmetrize(const FactoredRational& expr,
                                         const std::vector<std::vector<int>>& blocks);

struct LimitStats {
    int max_pole_order = 0;          // highest eps-pole order across survivors
    bool pole_cancellation = false;  // a genuine limit ran: some summand hit a
                                     // vanishing denominator at eps = 0
    size_t summands_seen = 0;
    size_t summands_kept = 0;
};

/// Evaluate lim_{eps->0} sum of the given factored rationals. Exact: summands
/// are combined over a common denominator in eps, common eps powers cancel,
/// and the result must be an eps-free polynomial.
/// Throws ConjectureFailure if the limit does not exist or is not polynomial.
LaurentPoly limit_at_zero(const std::vector<FactoredRational>& sum, LimitStats* stats = nullptr);

/// The same combination step, but the value is returned as an eps-free
/// numerator over a factored denominator, with no final division attempted.
/// Pole cancellation in eps is still enforced.
struct RationalLimit {
    LaurentPoly num;
    std::vector<std::pair<LinearForm, int>> den;  // eps-free forms, exponents > 0
};
RationalLimit limit_at_zero_rational(const std::vector<FactoredRational>& sum,
                                     LimitStats* stats = nullptr);

/// n-th prime (1-based: prime(1) = 2).
long nth_prime(int n);

}  // namespace bowlab
