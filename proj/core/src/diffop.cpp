#include "hyperlab/diffop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace hyperlab {

DiffOp DiffOp::identity() { return DiffOp({DiffTerm{1.0, 0, 0, 0, 0, 0, 0}}); }
DiffOp DiffOp::zero() { return DiffOp(); }
DiffOp DiffOp::d_t() { return DiffOp({DiffTerm{1.0, 0, 0, 0, 1, 0, 0}}); }

DiffOp DiffOp::d_x(int a) {
    if (a == 1) return DiffOp({DiffTerm{1.0, 0, 0, 0, 0, 1, 0}});
    if (a == 2) return DiffOp({DiffTerm{1.0, 0, 0, 0, 0, 0, 1}});
    throw std::invalid_argument("DiffOp::d_x: a must be 1 or 2");
}

DiffOp DiffOp::boost(int a) {
    if (a == 1) return DiffOp({DiffTerm{1.0, 0, 1, 0, 1, 0, 0}, DiffTerm{1.0, 1, 0, 0, 0, 1, 0}});
    if (a == 2) return DiffOp({DiffTerm{1.0, 0, 0, 1, 1, 0, 0}, DiffTerm{1.0, 1, 0, 0, 0, 0, 1}});
    throw std::invalid_argument("DiffOp::boost: a must be 1 or 2");
}

DiffOp DiffOp::tangent(int a) {
    if (a == 1) return DiffOp({DiffTerm{1.0, -1, 1, 0, 1, 0, 0}, DiffTerm{1.0, 0, 0, 0, 0, 1, 0}});
    if (a == 2) return DiffOp({DiffTerm{1.0, -1, 0, 1, 1, 0, 0}, DiffTerm{1.0, 0, 0, 0, 0, 0, 1}});
    throw std::invalid_argument("DiffOp::tangent: a must be 1 or 2");
}

DiffOp DiffOp::rotation() {
    return DiffOp({DiffTerm{1.0, 0, 1, 0, 0, 0, 1}, DiffTerm{-1.0, 0, 0, 1, 0, 1, 0}});
}

int DiffOp::max_order() const {
    int m = 0;
    for (const auto& t : terms_) m = std::max(m, t.dt + t.d1 + t.d2);
    return m;
}

void DiffOp::canonicalize() {
    std::map<std::tuple<int, int, int, int, int, int>, double> merged;
    for (const auto& t : terms_) {
        merged[{t.pt, t.p1, t.p2, t.dt, t.d1, t.d2}] += t.coef;
    }
    terms_.clear();
    for (const auto& [key, coef] : merged) {
        if (coef == 0.0) continue;
        const auto& [pt, p1, p2, dt, d1, d2] = key;
        terms_.push_back(DiffTerm{coef, pt, p1, p2, dt, d1, d2});
    }
}

DiffOp DiffOp::operator+(const DiffOp& o) const {
    std::vector<DiffTerm> t = terms_;
    t.insert(t.end(), o.terms_.begin(), o.terms_.end());
    return DiffOp(std::move(t));
}

DiffOp DiffOp::operator-(const DiffOp& o) const { return *this + o.scaled(-1.0); }

DiffOp DiffOp::scaled(double c) const {
    std::vector<DiffTerm> t = terms_;
    for (auto& term : t) term.coef *= c;
    return DiffOp(std::move(t));
}

namespace {

// Apply d^n along one axis to the monomial-times-derivative term, by the
// Leibniz rule. `axis`: 0 = t, 1 = x1, 2 = x2. Monomial power derivatives
// use falling factorials, valid for negative powers as well.
void apply_axis_derivative(const DiffTerm& in, int axis, int n, std::vector<DiffTerm>& out) {
    if (n == 0) {
        out.push_back(in);
        return;
    }
    const int p = (axis == 0) ? in.pt : (axis == 1) ? in.p1 : in.p2;
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        // k derivatives hit the monomial, n-k pass through.
        double fall = 1.0;
        for (int j = 0; j < k; ++j) fall *= static_cast<double>(p - j);
        if (fall != 0.0) {
            DiffTerm t = in;
            t.coef *= binom * fall;
            if (axis == 0) { t.pt -= k; t.dt += n - k; }
            else if (axis == 1) { t.p1 -= k; t.d1 += n - k; }
            else { t.p2 -= k; t.d2 += n - k; }
            out.push_back(t);
        }
        binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
    }
}

} // namespace

DiffOp DiffOp::operator*(const DiffOp& o) const {
    std::vector<DiffTerm> result;
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            // a = c_a m_a d^{da}; push d^{da} through m_b by Leibniz, one
            // axis at a time, then concatenate derivative orders.
            std::vector<DiffTerm> stage{DiffTerm{b.coef, b.pt, b.p1, b.p2, 0, 0, 0}};
            std::vector<DiffTerm> next;
            for (int axis = 0; axis < 3; ++axis) {
                const int n = (axis == 0) ? a.dt : (axis == 1) ? a.d1 : a.d2;
                next.clear();
                for (const auto& s : stage) apply_axis_derivative(s, axis, n, next);
                stage = next;
            }
            for (auto s : stage) {
                s.coef *= a.coef;
                s.pt += a.pt;
                s.p1 += a.p1;
                s.p2 += a.p2;
                s.dt += b.dt;
                s.d1 += b.d1;
                s.d2 += b.d2;
                result.push_back(s);
            }
        }
    }
    return DiffOp(std::move(result));
}

int raw_index(int a, int b, int c) {
    const int order = a + b + c;
    int base = 0;
    for (int k = 0; k < order; ++k) base += (k + 1) * (k + 2) / 2;
    // within fixed total order: enumerate (a,b,c) with a descending, then b.
    int idx = 0;
    for (int aa = order; aa > a; --aa) idx += order - aa + 1;
    idx += (order - a) - b;
    return base + idx;
}

int raw_partial_count(int max_order) {
    int n = 0;
    for (int k = 0; k <= max_order; ++k) n += (k + 1) * (k + 2) / 2;
    return n;
}

double DiffOp::evaluate(double t, double x1, double x2, const double* raw,
                        int raw_max_order) const {
    double sum = 0.0;
    for (const auto& term : terms_) {
        const int ord = term.dt + term.d1 + term.d2;
        if (ord > raw_max_order)
            throw std::out_of_range("DiffOp::evaluate: term order exceeds supplied partials");
        double c = term.coef;
        if (term.pt != 0) c *= std::pow(t, term.pt);
        if (term.p1 != 0) c *= std::pow(x1, term.p1);
        if (term.p2 != 0) c *= std::pow(x2, term.p2);
        sum += c * raw[raw_index(term.dt, term.d1, term.d2)];
    }
    return sum;
}

std::string DiffOp::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << t.coef;
        if (t.pt) os << "*t^" << t.pt;
        if (t.p1) os << "*x1^" << t.p1;
        if (t.p2) os << "*x2^" << t.p2;
        os << "*D(" << t.dt << "," << t.d1 << "," << t.d2 << ")";
    }
    return os.str();
}

DiffOp op_from_word(const std::vector<WordLetter>& word) {
    DiffOp op = DiffOp::identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        DiffOp f;
        switch (*it) {
            case WordLetter::Dt: f = DiffOp::d_t(); break;
            case WordLetter::D1: f = DiffOp::d_x(1); break;
            case WordLetter::D2: f = DiffOp::d_x(2); break;
            case WordLetter::L1: f = DiffOp::boost(1); break;
            case WordLetter::L2: f = DiffOp::boost(2); break;
        }
        op = f * op;
    }
    return op;
}

namespace {

std::string letter_name(WordLetter l) {
    switch (l) {
        case WordLetter::Dt: return "dt";
        case WordLetter::D1: return "d1";
        case WordLetter::D2: return "d2";
        case WordLetter::L1: return "L1";
        case WordLetter::L2: return "L2";
    }
    return "?";
}

std::vector<OpTableEntry> build_table(int max_order) {
    // Words d^I L^J: partial block (unordered multi-index) followed by an
    // ordered boost word. Orders above 2 are not exercised numerically.
    std::vector<std::vector<WordLetter>> words;
    words.push_back({});
    const std::vector<WordLetter> partials{WordLetter::Dt, WordLetter::D1, WordLetter::D2};
    const std::vector<WordLetter> boosts{WordLetter::L1, WordLetter::L2};
    if (max_order >= 1) {
        for (auto p : partials) words.push_back({p});
        for (auto b : boosts) words.push_back({b});
    }
    if (max_order >= 2) {
        for (std::size_t i = 0; i < partials.size(); ++i)
            for (std::size_t j = i; j < partials.size(); ++j)
                words.push_back({partials[i], partials[j]});
        for (auto p : partials)
            for (auto b : boosts) words.push_back({p, b});
        for (auto b1 : boosts)
            for (auto b2 : boosts) words.push_back({b1, b2});
    }
    if (max_order >= 3)
        throw std::invalid_argument("op_table: orders above 2 are not supported");

    std::vector<OpTableEntry> table;
    table.reserve(words.size());
    for (const auto& w : words) {
        OpTableEntry e;
        e.order = static_cast<int>(w.size());
        if (w.empty()) {
            e.name = "id";
        } else {
            for (std::size_t i = 0; i < w.size(); ++i) {
                if (i) e.name += ".";
                e.name += letter_name(w[i]);
            }
        }
        e.op = op_from_word(w);
        e.d_t_op = DiffOp::d_t() * e.op;
        e.d_1_op = DiffOp::d_x(1) * e.op;
        e.d_2_op = DiffOp::d_x(2) * e.op;
        table.push_back(std::move(e));
    }
    return table;
}

} // namespace

const std::vector<OpTableEntry>& op_table(int max_order) {
    static std::mutex mu;
    static std::map<int, std::vector<OpTableEntry>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(max_order);
    if (it == cache.end()) it = cache.emplace(max_order, build_table(max_order)).first;
    return it->second;
}

} // namespace hyperlab
