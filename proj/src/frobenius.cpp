#include "graphcohom/frobenius.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "graphcohom/exterior.hpp"
#include "graphcohom/matrix.hpp"

namespace gcoh {

// ---------------------------------------------------------------------------
// TensorElement

TensorElement TensorElement::pure(Index idx, const Scalar& coefficient, const Field& f)
{
    TensorElement t(idx.size());
    t.add_term(idx, coefficient, f);
    return t;
}

Scalar TensorElement::coefficient(const Index& idx) const
{
    auto it = terms_.find(idx);
    return it == terms_.end() ? Scalar(0) : it->second;
}

void TensorElement::add_term(const Index& idx, const Scalar& c, const Field& f)
{
    if (idx.size() != slots_)
        throw std::invalid_argument("TensorElement: term has " + std::to_string(idx.size()) + " slots, expected "
                                    + std::to_string(slots_));
    if (Field::is_zero(c))
        return;
    auto [it, inserted] = terms_.try_emplace(idx, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (Field::is_zero(it->second))
            terms_.erase(it);
    }
}

void TensorElement::add(const TensorElement& other, const Scalar& c, const Field& f)
{
    if (other.slots_ != slots_)
        throw std::invalid_argument("TensorElement::add: slot mismatch");
    for (const auto& [idx, v] : other.terms_)
        add_term(idx, f.mul(v, c), f);
}

// ---------------------------------------------------------------------------
// FrobeniusAlgebra

FrobeniusAlgebra::FrobeniusAlgebra(std::string name, Field field, std::vector<std::string> labels,
                                   std::vector<int> degrees, int unit,
                                   std::vector<std::vector<std::vector<Term>>> mult,
                                   std::vector<std::vector<Scalar>> pairing, int pairing_degree)
    : name_(std::move(name)),
      field_(field),
      labels_(std::move(labels)),
      degrees_(std::move(degrees)),
      unit_(unit),
      mult_(std::move(mult)),
      pairing_(std::move(pairing)),
      pairing_degree_(pairing_degree)
{
    const std::size_t n = labels_.size();
    if (n == 0)
        throw std::invalid_argument("algebra must have a nonempty basis");
    if (degrees_.size() != n || mult_.size() != n || pairing_.size() != n)
        throw std::invalid_argument("algebra data has inconsistent sizes");
    for (std::size_t i = 0; i < n; ++i) {
        if (mult_[i].size() != n || pairing_[i].size() != n)
            throw std::invalid_argument("algebra data has inconsistent sizes");
        for (auto& row : mult_[i]) {
            // Merge duplicates and normalize into the field.
            std::map<int, Scalar> acc;
            for (const auto& t : row) {
                if (t.basis < 0 || static_cast<std::size_t>(t.basis) >= n)
                    throw std::invalid_argument("structure constant refers to a basis index out of range");
                acc[t.basis] = field_.add(acc[t.basis], field_.normalize(t.coefficient));
            }
            row.clear();
            for (auto& [k, c] : acc)
                if (!Field::is_zero(c))
                    row.push_back({k, c});
        }
        for (auto& p : pairing_[i])
            p = field_.normalize(p);
    }
    validate();
    diagonal_ = compute_diagonal(*this);
}

void FrobeniusAlgebra::validate() const
{
    const int n = static_cast<int>(dimension());
    const Field& f = field_;
    auto fail = [&](const std::string& what) { throw std::invalid_argument("algebra '" + name_ + "': " + what); };

    if (unit_ < 0 || unit_ >= n)
        fail("unit index out of range");
    if (degree(unit_) != 0)
        fail("unit must have degree 0");
    for (int i = 0; i < n; ++i)
        if (degree(i) < 0)
            fail("basis element '" + label(i) + "' has negative degree");

    auto product_vec = [&](int i, int j) {
        std::vector<Scalar> v(static_cast<std::size_t>(n));
        for (const auto& t : product(i, j))
            v[static_cast<std::size_t>(t.basis)] = t.coefficient;
        return v;
    };
    // (Σ_k v_k a_k)·a_j
    auto right_mult = [&](const std::vector<Scalar>& v, int j) {
        std::vector<Scalar> out(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            if (Field::is_zero(v[static_cast<std::size_t>(k)]))
                continue;
            for (const auto& t : product(k, j))
                out[static_cast<std::size_t>(t.basis)] = f.add(out[static_cast<std::size_t>(t.basis)],
                                                               f.mul(v[static_cast<std::size_t>(k)], t.coefficient));
        }
        return out;
    };
    auto left_mult = [&](int i, const std::vector<Scalar>& v) {
        std::vector<Scalar> out(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            if (Field::is_zero(v[static_cast<std::size_t>(k)]))
                continue;
            for (const auto& t : product(i, k))
                out[static_cast<std::size_t>(t.basis)] = f.add(out[static_cast<std::size_t>(t.basis)],
                                                               f.mul(v[static_cast<std::size_t>(k)], t.coefficient));
        }
        return out;
    };
    auto pair_vec = [&](const std::vector<Scalar>& v, int j) {
        Scalar s(0);
        for (int k = 0; k < n; ++k)
            if (!Field::is_zero(v[static_cast<std::size_t>(k)]))
                s = f.add(s, f.mul(v[static_cast<std::size_t>(k)], pairing(k, j)));
        return s;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (const auto& t : product(i, j))
                if (degree(t.basis) != degree(i) + degree(j))
                    fail("product " + label(i) + "*" + label(j) + " is not homogeneous of degree "
                         + std::to_string(degree(i) + degree(j)));
            auto ij = product_vec(i, j);
            auto ji = product_vec(j, i);
            const bool odd = (degree(i) * degree(j)) % 2 != 0;
            for (int k = 0; k < n; ++k) {
                const Scalar expect = odd ? f.neg(ji[static_cast<std::size_t>(k)]) : ji[static_cast<std::size_t>(k)];
                if (ij[static_cast<std::size_t>(k)] != expect)
                    fail("graded commutativity fails for " + label(i) + "," + label(j));
            }
            const Scalar& p = pairing(i, j);
            if (!Field::is_zero(p) && degree(i) + degree(j) != pairing_degree_)
                fail("pairing <" + label(i) + "," + label(j) + "> is nonzero outside degree "
                     + std::to_string(pairing_degree_));
            const Scalar ps = odd ? f.neg(pairing(j, i)) : pairing(j, i);
            if (p != ps)
                fail("pairing is not graded symmetric at " + label(i) + "," + label(j));
            for (int k = 0; k < n; ++k) {
                // associativity and the Frobenius identity
                if (right_mult(ij, k) != left_mult(i, product_vec(j, k)))
                    fail("associativity fails for " + label(i) + "," + label(j) + "," + label(k));
                Scalar lhs = pair_vec(ij, k);
                Scalar rhs(0);
                auto jk = product_vec(j, k);
                for (int m = 0; m < n; ++m)
                    if (!Field::is_zero(jk[static_cast<std::size_t>(m)]))
                        rhs = f.add(rhs, f.mul(jk[static_cast<std::size_t>(m)], pairing(i, m)));
                if (lhs != rhs)
                    fail("Frobenius identity <ab,c> = <a,bc> fails for " + label(i) + "," + label(j) + ","
                         + label(k));
            }
        }
        auto ui = product_vec(unit_, i);
        auto iu = product_vec(i, unit_);
        for (int k = 0; k < n; ++k) {
            const Scalar expect = f.from_int(k == i ? 1 : 0);
            if (ui[static_cast<std::size_t>(k)] != expect || iu[static_cast<std::size_t>(k)] != expect)
                fail("unit law fails for " + label(i));
        }
    }
    ExactMatrix pm(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        SparseVector col;
        for (int i = 0; i < n; ++i)
            if (!Field::is_zero(pairing(i, j)))
                col.emplace_back(static_cast<std::size_t>(i), pairing(i, j));
        pm.set_column(static_cast<std::size_t>(j), std::move(col));
    }
    if (rank(pm, f) != static_cast<std::size_t>(n))
        fail("pairing is not perfect");
}

namespace {

using Mult = std::vector<std::vector<std::vector<FrobeniusAlgebra::Term>>>;
using Pair = std::vector<std::vector<Scalar>>;

Mult empty_mult(std::size_t n)
{
    return Mult(n, std::vector<std::vector<FrobeniusAlgebra::Term>>(n));
}

Pair empty_pairing(std::size_t n)
{
    return Pair(n, std::vector<Scalar>(n, Scalar(0)));
}

}  // namespace

FrobeniusAlgebra FrobeniusAlgebra::ground(const Field& f)
{
    Mult m = empty_mult(1);
    m[0][0] = {{0, Scalar(1)}};
    Pair p = empty_pairing(1);
    p[0][0] = 1;
    return FrobeniusAlgebra("ground", f, {"1"}, {0}, 0, std::move(m), std::move(p), 0);
}

FrobeniusAlgebra FrobeniusAlgebra::sphere(int d, const Field& f)
{
    if (d <= 0)
        throw std::invalid_argument("sphere dimension must be positive");
    Mult m = empty_mult(2);
    m[0][0] = {{0, Scalar(1)}};
    m[0][1] = {{1, Scalar(1)}};
    m[1][0] = {{1, Scalar(1)}};
    Pair p = empty_pairing(2);
    p[0][1] = 1;
    p[1][0] = (d * d) % 2 == 0 ? 1 : -1;
    return FrobeniusAlgebra("s" + std::to_string(d), f, {"1", "x"}, {0, d}, 0, std::move(m), std::move(p), d);
}

FrobeniusAlgebra FrobeniusAlgebra::cp2(const Field& f)
{
    Mult m = empty_mult(3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
            if (i + j < 3)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {{i + j, Scalar(1)}};
    }
    Pair p = empty_pairing(3);
    p[0][2] = p[1][1] = p[2][0] = 1;
    return FrobeniusAlgebra("cp2", f, {"1", "h", "h2"}, {0, 2, 4}, 0, std::move(m), std::move(p), 4);
}

FrobeniusAlgebra FrobeniusAlgebra::torus(const Field& f)
{
    // basis 1, a, b, w = ab with deg a = deg b = 1
    Mult m = empty_mult(4);
    for (int i = 0; i < 4; ++i) {
        m[0][static_cast<std::size_t>(i)] = {{i, Scalar(1)}};
        m[static_cast<std::size_t>(i)][0] = {{i, Scalar(1)}};
    }
    m[1][2] = {{3, Scalar(1)}};
    m[2][1] = {{3, Scalar(-1)}};
    Pair p = empty_pairing(4);
    p[0][3] = p[3][0] = 1;
    p[1][2] = 1;
    p[2][1] = -1;
    return FrobeniusAlgebra("t2", f, {"1", "a", "b", "w"}, {0, 1, 1, 2}, 0, std::move(m), std::move(p), 2);
}

std::vector<std::string> FrobeniusAlgebra::builtin_names()
{
    return {"ground", "s2", "s4", "cp2", "t2"};
}

std::optional<FrobeniusAlgebra> FrobeniusAlgebra::builtin(const std::string& name, const Field& f)
{
    if (name == "ground")
        return ground(f);
    if (name == "s2")
        return sphere(2, f);
    if (name == "s4")
        return sphere(4, f);
    if (name == "cp2")
        return cp2(f);
    if (name == "t2")
        return torus(f);
    return std::nullopt;
}

std::string FrobeniusAlgebra::format(const TensorElement& t) const
{
    if (t.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : t.terms()) {
        mpq_class v = c;
        if (field_.is_prime() && v * 2 > field_.characteristic())
            v -= field_.characteristic();
        if (!first)
            os << (v < 0 ? " - " : " + ");
        else if (v < 0)
            os << "-";
        first = false;
        mpq_class mag = abs(v);
        if (mag != 1)
            os << mag.get_str() << "*";
        for (std::size_t s = 0; s < idx.size(); ++s) {
            if (s > 0)
                os << "⊗";
            os << label(idx[s]);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string strip_comment(std::string line)
{
    if (auto h = line.find('#'); h != std::string::npos)
        line.erase(h);
    return line;
}

bool parse_rational(const std::string& s, mpq_class& out)
{
    if (s.empty())
        return false;
    std::size_t slash = s.find('/');
    auto digits = [](const std::string& t) {
        return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (slash == std::string::npos) {
        if (!digits(s))
            return false;
        out = mpq_class(mpz_class(s));
        return true;
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits(num) || !digits(den) || mpz_class(den) == 0)
        return false;
    out = mpq_class(mpz_class(num), mpz_class(den));
    out.canonicalize();
    return true;
}

}  // namespace

FrobeniusAlgebra FrobeniusAlgebra::parse(std::istream& in, const std::string& name, const std::optional<Field>& field)
{
    std::optional<Field> text_field;
    std::optional<int> pdeg;
    std::vector<std::string> labels;
    std::vector<int> degrees;
    std::optional<int> unit;
    std::size_t basis_line = 0;

    struct Entry {
        std::size_t line;
        std::string a, b, rhs;
    };
    std::vector<Entry> muls, pairs;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = strip_comment(raw);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw))
            continue;
        if (kw == "field") {
            std::string rest;
            std::getline(ls, rest);
            try {
                text_field = Field::parse(rest);
            } catch (const std::exception& e) {
                throw ParseError(lineno, e.what());
            }
        } else if (kw == "pairing_degree") {
            int d = 0;
            if (!(ls >> d))
                throw ParseError(lineno, "expected 'pairing_degree <int>'");
            pdeg = d;
        } else if (kw == "basis") {
            if (!labels.empty())
                throw ParseError(lineno, "duplicate 'basis' line");
            basis_line = lineno;
            std::string tok;
            while (ls >> tok) {
                auto colon = tok.rfind(':');
                if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                    throw ParseError(lineno, "basis entries look like name:degree, got '" + tok + "'");
                std::string lab = tok.substr(0, colon);
                if (lab.find_first_of("+-*=") != std::string::npos)
                    throw ParseError(lineno, "basis name '" + lab + "' may not contain + - * =");
                if (std::find(labels.begin(), labels.end(), lab) != labels.end())
                    throw ParseError(lineno, "duplicate basis name '" + lab + "'");
                try {
                    std::size_t used = 0;
                    int d = std::stoi(tok.substr(colon + 1), &used);
                    if (used != tok.size() - colon - 1)
                        throw std::invalid_argument("x");
                    degrees.push_back(d);
                } catch (const std::exception&) {
                    throw ParseError(lineno, "bad degree in '" + tok + "'");
                }
                labels.push_back(lab);
            }
            if (labels.empty())
                throw ParseError(lineno, "empty basis");
        } else if (kw == "unit") {
            std::string lab;
            if (!(ls >> lab))
                throw ParseError(lineno, "expected 'unit <name>'");
            auto it = std::find(labels.begin(), labels.end(), lab);
            if (it == labels.end())
                throw ParseError(lineno, "unknown basis element '" + lab + "'");
            unit = static_cast<int>(it - labels.begin());
        } else if (kw == "mul" || kw == "pair") {
            std::string a, b, eq;
            if (!(ls >> a >> b >> eq) || eq != "=")
                throw ParseError(lineno, "expected '" + kw + " a b = ...'");
            std::string rhs;
            std::getline(ls, rhs);
            (kw == "mul" ? muls : pairs).push_back({lineno, a, b, rhs});
        } else {
            throw ParseError(lineno, "unknown keyword '" + kw + "'");
        }
    }

    if (labels.empty())
        throw ParseError(lineno + 1, "missing 'basis' line");
    if (!pdeg)
        throw ParseError(lineno + 1, "missing 'pairing_degree' line");
    if (!unit)
        throw ParseError(lineno + 1, "missing 'unit' line");
    Field f = field.value_or(text_field.value_or(Field::rationals()));
    if (field && text_field && *field != *text_field)
        throw ParseError(basis_line, "algebra declares field " + text_field->name() + " but " + field->name()
                                         + " was requested");

    const std::size_t n = labels.size();
    auto index_of = [&](const std::string& lab, std::size_t line) {
        auto it = std::find(labels.begin(), labels.end(), lab);
        if (it == labels.end())
            throw ParseError(line, "unknown basis element '" + lab + "'");
        return static_cast<int>(it - labels.begin());
    };
    auto parse_rhs = [&](const std::string& rhs, std::size_t line) {
        std::string s;
        for (char c : rhs)
            if (!std::isspace(static_cast<unsigned char>(c)))
                s.push_back(c);
        if (s.empty())
            throw ParseError(line, "empty right-hand side");
        std::vector<std::pair<int, mpq_class>> terms;
        std::size_t pos = 0;
        while (pos < s.size()) {
            int sign = 1;
            while (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
                if (s[pos] == '-')
                    sign = -sign;
                ++pos;
            }
            std::size_t end = s.find_first_of("+-", pos);
            std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            pos = end == std::string::npos ? s.size() : end;
            if (term.empty())
                throw ParseError(line, "dangling sign in '" + rhs + "'");
            mpq_class coef(1);
            std::string lab = term;
            if (auto star = term.find('*'); star != std::string::npos) {
                if (!parse_rational(term.substr(0, star), coef))
                    throw ParseError(line, "bad coefficient in '" + term + "'");
                lab = term.substr(star + 1);
            } else if (std::find(labels.begin(), labels.end(), term) == labels.end()) {
                mpq_class c;
                if (parse_rational(term, c)) {
                    if (c != 0)
                        throw ParseError(line, "bare scalar '" + term + "' needs a basis element");
                    continue;
                }
            }
            terms.emplace_back(index_of(lab, line), sign * coef);
        }
        return terms;
    };

    Mult mult = empty_mult(n);
    std::vector<std::vector<char>> mult_set(n, std::vector<char>(n, 0));
    auto set_product = [&](int i, int j, std::vector<FrobeniusAlgebra::Term> v, std::size_t line) {
        auto& slot = mult[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        char& flag = mult_set[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (flag) {
            auto norm = [&](std::vector<FrobeniusAlgebra::Term> t) {
                std::map<int, Scalar> m;
                for (auto& x : t)
                    m[x.basis] = f.add(m[x.basis], f.normalize(x.coefficient));
                std::erase_if(m, [](const auto& kv) { return Field::is_zero(kv.second); });
                return m;
            };
            if (norm(slot) != norm(v))
                throw ParseError(line, "product " + labels[static_cast<std::size_t>(i)] + "*"
                                           + labels[static_cast<std::size_t>(j)]
                                           + " conflicts with an earlier or graded-commutative entry");
            return;
        }
        slot = std::move(v);
        flag = 1;
    };
    for (const auto& e : muls) {
        int i = index_of(e.a, e.line), j = index_of(e.b, e.line);
        std::vector<FrobeniusAlgebra::Term> v;
        for (auto& [k, c] : parse_rhs(e.rhs, e.line))
            v.push_back({k, c});
        set_product(i, j, v, e.line);
        const bool odd = (degrees[static_cast<std::size_t>(i)] * degrees[static_cast<std::size_t>(j)]) % 2 != 0;
        std::vector<FrobeniusAlgebra::Term> w = v;
        if (odd)
            for (auto& t : w)
                t.coefficient = -t.coefficient;
        set_product(j, i, w, e.line);
    }
    // Products with the unit are implied by declaring it.
    for (std::size_t i = 0; i < n; ++i) {
        const int u = *unit;
        if (!mult_set[static_cast<std::size_t>(u)][i]) {
            mult[static_cast<std::size_t>(u)][i] = {{static_cast<int>(i), Scalar(1)}};
            mult_set[static_cast<std::size_t>(u)][i] = 1;
        }
        if (!mult_set[i][static_cast<std::size_t>(u)]) {
            mult[i][static_cast<std::size_t>(u)] = {{static_cast<int>(i), Scalar(1)}};
            mult_set[i][static_cast<std::size_t>(u)] = 1;
        }
    }

    Pair pairing = empty_pairing(n);
    std::vector<std::vector<char>> pair_set(n, std::vector<char>(n, 0));
    for (const auto& e : pairs) {
        int i = index_of(e.a, e.line), j = index_of(e.b, e.line);
        mpq_class c;
        std::string s;
        for (char ch : e.rhs)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                s.push_back(ch);
        bool neg = !s.empty() && s[0] == '-';
        if (neg || (!s.empty() && s[0] == '+'))
            s = s.substr(1);
        if (!parse_rational(s, c))
            throw ParseError(e.line, "pairing value must be a rational number, got '" + e.rhs + "'");
        if (neg)
            c = -c;
        const bool odd = (degrees[static_cast<std::size_t>(i)] * degrees[static_cast<std::size_t>(j)]) % 2 != 0;
        const Scalar v = f.normalize(c);
        const Scalar w = f.normalize(odd ? mpq_class(-c) : c);
        auto put = [&](int a, int b, const Scalar& x) {
            auto& flag = pair_set[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            auto& slot = pairing[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (flag && slot != x)
                throw ParseError(e.line, "pairing <" + labels[static_cast<std::size_t>(a)] + ","
                                             + labels[static_cast<std::size_t>(b)]
                                             + "> conflicts with an earlier or graded-symmetric entry");
            slot = x;
            flag = 1;
        };
        put(i, j, v);
        put(j, i, w);
    }

    try {
        return FrobeniusAlgebra(name, f, labels, degrees, *unit, std::move(mult), std::move(pairing), *pdeg);
    } catch (const std::invalid_argument& e) {
        throw ParseError(basis_line, e.what());
    }
}

FrobeniusAlgebra FrobeniusAlgebra::parse_file(const std::string& path, const std::optional<Field>& field)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open algebra file '" + path + "'");
    return parse(in, path, field);
}

// ---------------------------------------------------------------------------
// Tensor operations

namespace {

void check_slots(const TensorElement& x, const TensorElement& y, const char* op)
{
    if (x.slots() != y.slots())
        throw std::invalid_argument(std::string(op) + ": slot mismatch (" + std::to_string(x.slots()) + " vs "
                                    + std::to_string(y.slots()) + ")");
}

/// (-1)^{Σ_{p<q} |y_p| |x_q|}
int crossing_sign(const FrobeniusAlgebra& A, const TensorElement::Index& x, const TensorElement::Index& y)
{
    long parity = 0;
    long odd_y_before = 0;
    for (std::size_t q = 0; q < x.size(); ++q) {
        if (A.degree(x[q]) % 2 != 0)
            parity += odd_y_before;
        if (A.degree(y[q]) % 2 != 0)
            ++odd_y_before;
    }
    return parity % 2 == 0 ? 1 : -1;
}

/// Expands the slotwise products of two pure tensors into `out` with coefficient c.
void expand_products(const FrobeniusAlgebra& A, const TensorElement::Index& x, const TensorElement::Index& y,
                     const Scalar& c, TensorElement& out)
{
    const Field& f = A.field();
    std::vector<std::pair<TensorElement::Index, Scalar>> partial{{{}, c}};
    for (std::size_t s = 0; s < x.size(); ++s) {
        const auto& prod = A.product(x[s], y[s]);
        if (prod.empty())
            return;
        std::vector<std::pair<TensorElement::Index, Scalar>> next;
        next.reserve(partial.size() * prod.size());
        for (const auto& [idx, v] : partial) {
            for (const auto& t : prod) {
                auto grown = idx;
                grown.push_back(t.basis);
                next.emplace_back(std::move(grown), f.mul(v, t.coefficient));
            }
        }
        partial = std::move(next);
    }
    for (const auto& [idx, v] : partial)
        out.add_term(idx, v, f);
}

}  // namespace

TensorElement multiply(const FrobeniusAlgebra& A, const TensorElement& x, const TensorElement& y)
{
    check_slots(x, y, "multiply");
    const Field& f = A.field();
    TensorElement out(x.slots());
    for (const auto& [xi, xc] : x.terms()) {
        for (const auto& [yi, yc] : y.terms()) {
            Scalar c = f.mul(xc, yc);
            if (crossing_sign(A, xi, yi) < 0)
                c = f.neg(c);
            expand_products(A, xi, yi, c, out);
        }
    }
    return out;
}

Scalar pairing_n(const FrobeniusAlgebra& A, const TensorElement& x, const TensorElement& y)
{
    check_slots(x, y, "pairing_n");
    const Field& f = A.field();
    Scalar total(0);
    for (const auto& [xi, xc] : x.terms()) {
        for (const auto& [yi, yc] : y.terms()) {
            Scalar c = f.mul(xc, yc);
            for (std::size_t s = 0; s < xi.size() && !Field::is_zero(c); ++s)
                c = f.mul(c, A.pairing(xi[s], yi[s]));
            if (Field::is_zero(c))
                continue;
            if (crossing_sign(A, xi, yi) < 0)
                c = f.neg(c);
            total = f.add(total, c);
        }
    }
    return total;
}

TensorElement unit_tensor(const FrobeniusAlgebra& A, std::size_t slots)
{
    return TensorElement::pure(TensorElement::Index(slots, A.unit()), A.field().from_int(1), A.field());
}

TensorElement compute_diagonal(const FrobeniusAlgebra& A)
{
    const Field& f = A.field();
    const int n = static_cast<int>(A.dimension());
    const std::size_t N = static_cast<std::size_t>(n * n);
    // Unknown c_{uv} at position u*n+v; equation per basis pair (a,b).
    std::vector<std::vector<Scalar>> sys(N, std::vector<Scalar>(N, Scalar(0)));
    std::vector<Scalar> rhs(N, Scalar(0));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const std::size_t row = static_cast<std::size_t>(a * n + b);
            for (int u = 0; u < n; ++u) {
                for (int v = 0; v < n; ++v) {
                    Scalar c = f.mul(A.pairing(a, u), A.pairing(b, v));
                    if (Field::is_zero(c))
                        continue;
                    if ((A.degree(b) * A.degree(u)) % 2 != 0)
                        c = f.neg(c);
                    sys[row][static_cast<std::size_t>(u * n + v)] = c;
                }
            }
            for (const auto& t : A.product(a, b))
                rhs[row] = f.add(rhs[row], f.mul(t.coefficient, A.pairing(t.basis, A.unit())));
        }
    }
    std::vector<Scalar> sol = solve_dense(std::move(sys), std::move(rhs), f);
    TensorElement delta(2);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            delta.add_term({u, v}, sol[static_cast<std::size_t>(u * n + v)], f);
    return delta;
}

TensorElement pullback_slot(const FrobeniusAlgebra& A, const TensorElement& x, std::size_t slot, std::size_t n)
{
    if (x.slots() != 1)
        throw std::invalid_argument("pullback_slot: expected a one-slot element");
    if (slot >= n)
        throw std::out_of_range("pullback_slot: slot out of range");
    TensorElement out(n);
    for (const auto& [idx, c] : x.terms()) {
        TensorElement::Index full(n, A.unit());
        full[slot] = idx[0];
        out.add_term(full, c, A.field());
    }
    return out;
}

TensorElement comultiply(const FrobeniusAlgebra& A, const TensorElement& a)
{
    return multiply(A, pullback_slot(A, a, 0, 2), A.diagonal());
}

TensorElement comultiply(const FrobeniusAlgebra& A, int basis)
{
    return comultiply(A, TensorElement::pure({basis}, A.field().from_int(1), A.field()));
}

TensorElement pullback_pair_diagonal(const FrobeniusAlgebra& A, std::size_t a, std::size_t b, std::size_t n)
{
    if (a >= n || b >= n)
        throw std::out_of_range("pullback_pair_diagonal: slot out of range");
    if (a == b)
        throw std::invalid_argument("pullback_pair_diagonal: slots must differ");
    const Field& f = A.field();
    TensorElement out(n);
    for (const auto& [idx, c] : A.diagonal().terms()) {
        TensorElement left = pullback_slot(A, TensorElement::pure({idx[0]}, c, f), a, n);
        TensorElement right = pullback_slot(A, TensorElement::pure({idx[1]}, f.from_int(1), f), b, n);
        out.add(multiply(A, left, right), f.from_int(1), f);
    }
    return out;
}

TensorElement block_product(const FrobeniusAlgebra& A, const TensorElement& x, const Partition& p)
{
    if (p.element_count() != x.slots())
        throw std::invalid_argument("block_product: partition does not match slot count");
    const Field& f = A.field();
    const std::size_t n = x.slots();
    std::vector<int> keys(n);
    for (std::size_t s = 0; s < n; ++s)
        keys[s] = p.block_of(static_cast<int>(s));

    TensorElement out(p.size());
    std::vector<int> degs(n);
    for (const auto& [idx, c] : x.terms()) {
        for (std::size_t s = 0; s < n; ++s)
            degs[s] = A.degree(idx[s]);
        Scalar coef = koszul_sort_sign(keys, degs) < 0 ? f.neg(c) : c;
        // Blocks in order, elements ascending: the stably sorted sequence.
        std::vector<std::pair<TensorElement::Index, Scalar>> partial{
            {TensorElement::Index(p.size(), A.unit()), coef}};
        for (std::size_t b = 0; b < p.size() && !partial.empty(); ++b) {
            for (int slot : p.block(b)) {
                const int factor = idx[static_cast<std::size_t>(slot)];
                std::vector<std::pair<TensorElement::Index, Scalar>> next;
                for (const auto& [cur, v] : partial) {
                    for (const auto& t : A.product(cur[b], factor)) {
                        auto grown = cur;
                        grown[b] = t.basis;
                        next.emplace_back(std::move(grown), f.mul(v, t.coefficient));
                    }
                }
                partial = std::move(next);
            }
        }
        for (const auto& [i, v] : partial)
            out.add_term(i, v, f);
    }
    return out;
}

TensorElement block_lift(const FrobeniusAlgebra& A, const TensorElement& y, const Partition& p)
{
    if (p.size() != y.slots())
        throw std::invalid_argument("block_lift: partition does not match slot count");
    TensorElement out(p.element_count());
    for (const auto& [idx, c] : y.terms()) {
        TensorElement::Index full(p.element_count(), A.unit());
        for (std::size_t b = 0; b < p.size(); ++b)
            full[static_cast<std::size_t>(p.block(b).front())] = idx[b];
        out.add_term(full, c, A.field());
    }
    return out;
}

namespace {

// e^∨ for every basis element e: <w, e^∨> = δ_{w,e}.
std::vector<std::vector<FrobeniusAlgebra::Term>> dual_basis(const FrobeniusAlgebra& A)
{
    const Field& f = A.field();
    const std::size_t dim = A.dimension();
    std::vector<std::vector<Scalar>> gram(dim, std::vector<Scalar>(dim));
    for (std::size_t w = 0; w < dim; ++w)
        for (std::size_t j = 0; j < dim; ++j)
            gram[w][j] = A.pairing(static_cast<int>(w), static_cast<int>(j));
    std::vector<std::vector<FrobeniusAlgebra::Term>> out(dim);
    for (std::size_t e = 0; e < dim; ++e) {
        std::vector<Scalar> rhs(dim, Scalar(0));
        rhs[e] = f.from_int(1);
        auto c = solve_dense(gram, std::move(rhs), f);
        for (std::size_t j = 0; j < dim; ++j)
            if (!Field::is_zero(c[j]))
                out[e].push_back({static_cast<int>(j), c[j]});
    }
    return out;
}

}  // namespace

TensorElement diagonal_partition(const FrobeniusAlgebra& A, const Partition& p, std::size_t n)
{
    if (p.element_count() != n)
        throw std::invalid_argument("diagonal_partition: partition must cover exactly " + std::to_string(n)
                                    + " slots");
    // Δ_P = Σ_u <Ψ(u), 1> u^∨ over basis tensors u, where the n-slot dual of u is
    // (−1)^{Σ_{p<q} (m−|u_p|)|u_q|} ⊗ u_i^∨. Only u with every block in degree m contribute.
    const Field& f = A.field();
    const int m = A.pairing_degree();
    const auto duals = dual_basis(A);
    const TensorElement one = unit_tensor(A, p.size());
    TensorElement out(n);
    TensorElement::Index u(n);
    std::vector<int> block_degree(p.size(), 0);

    std::function<void(std::size_t)> visit = [&](std::size_t s) {
        if (s == n) {
            for (int d : block_degree)
                if (d != m)
                    return;
            Scalar c = pairing_n(A, block_product(A, TensorElement::pure(u, f.from_int(1), f), p), one);
            if (Field::is_zero(c))
                return;
            int parity = 0, before = 0;
            for (std::size_t q = 0; q < n; ++q) {
                parity += before * A.degree(u[q]);
                before += m - A.degree(u[q]);
            }
            if (parity % 2 != 0)
                c = f.neg(c);
            std::vector<std::pair<TensorElement::Index, Scalar>> partial{{{}, c}};
            for (std::size_t q = 0; q < n; ++q) {
                std::vector<std::pair<TensorElement::Index, Scalar>> next;
                for (const auto& [idx, v] : partial)
                    for (const auto& t : duals[static_cast<std::size_t>(u[q])]) {
                        auto grown = idx;
                        grown.push_back(t.basis);
                        next.emplace_back(std::move(grown), f.mul(v, t.coefficient));
                    }
                partial = std::move(next);
            }
            for (const auto& [idx, v] : partial)
                out.add_term(idx, v, f);
            return;
        }
        const auto b = static_cast<std::size_t>(p.block_of(static_cast<int>(s)));
        for (std::size_t e = 0; e < A.dimension(); ++e) {
            const int d = A.degree(static_cast<int>(e));
            if (block_degree[b] + d > m)
                continue;
            u[s] = static_cast<int>(e);
            block_degree[b] += d;
            visit(s + 1);
            block_degree[b] -= d;
        }
    };
    visit(0);
    return out;
}

Partition induced_block_partition(const Partition& q, const Partition& p)
{
    if (!refines(q, p))
        throw std::invalid_argument("relative diagonal: q does not refine p");
    std::vector<std::vector<int>> groups(p.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        groups[static_cast<std::size_t>(p.block_of(q.block(i).front()))].push_back(static_cast<int>(i));
    return Partition(q.size(), std::move(groups));
}

TensorElement relative_diagonal(const FrobeniusAlgebra& A, const Partition& q, const Partition& p)
{
    return diagonal_partition(A, induced_block_partition(q, p), q.size());
}

}  // namespace gcoh
