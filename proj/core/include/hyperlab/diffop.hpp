// diffop.hpp
// Exact algebra of linear differential operators whose coefficients are
// monomials c * t^pt * x1^p1 * x2^p2 (pt may be negative). Composing the
// basis fields d_alpha, L_a = x^a d_t + t d_a and db_a = (x^a/t) d_t + d_a
// in this algebra yields closed-form expansions of words like d^I L^J into
// raw partial derivatives, which slice diagnostics evaluate pointwise.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hyperlab {

// One term: coef * t^pt * x1^p1 * x2^p2 * d_t^dt d_1^d1 d_2^d2.
struct DiffTerm {
    double coef = 0.0;
    int pt = 0, p1 = 0, p2 = 0;
    int dt = 0, d1 = 0, d2 = 0;
};

class DiffOp {
public:
    DiffOp() = default;
    explicit DiffOp(std::vector<DiffTerm> terms) : terms_(std::move(terms)) { canonicalize(); }

    static DiffOp identity();
    static DiffOp zero();
    static DiffOp d_t();
    static DiffOp d_x(int a);      // a = 1, 2
    static DiffOp boost(int a);    // L_a = x^a d_t + t d_a
    static DiffOp tangent(int a);  // db_a = (x^a/t) d_t + d_a
    static DiffOp rotation();      // x^1 d_2 - x^2 d_1

    const std::vector<DiffTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    // Highest total derivative order among terms.
    int max_order() const;

    DiffOp operator+(const DiffOp& o) const;
    DiffOp operator-(const DiffOp& o) const;
    DiffOp scaled(double c) const;

    // Operator composition: (*this) after o, i.e. (A*B)f = A(Bf).
    DiffOp operator*(const DiffOp& o) const;

    // Evaluate at (t,x1,x2) given raw partials indexed by raw_index(dt,d1,d2).
    double evaluate(double t, double x1, double x2, const double* raw,
                    int raw_max_order) const;

    std::string to_string() const;

private:
    void canonicalize();
    std::vector<DiffTerm> terms_;
};

// Dense index of the partial d_t^a d_1^b d_2^c among all partials of total
// order <= max_order, graded lexicographic. raw_partial_count(3) == 20.
int raw_index(int a, int b, int c);
int raw_partial_count(int max_order);

// Word of vector fields applied left to right as written: the first element
// acts last (outermost). Entries: 't', '1', '2' = partials; 'L'+a = boosts.
enum class WordLetter : std::uint8_t { Dt, D1, D2, L1, L2 };

DiffOp op_from_word(const std::vector<WordLetter>& word);

// The table of d^I L^J operators with |I|+|J| <= max_order (max_order <= 2),
// as the diagnostics use them: I runs over unordered partial multi-indices,
// J over ordered boost words. Each entry carries the operator and the three
// first-derivative compositions needed by energy integrands.
struct OpTableEntry {
    std::string name;     // e.g. "dt.L1"
    int order = 0;        // |I| + |J|
    DiffOp op;            // d^I L^J
    DiffOp d_t_op;        // d_t o (d^I L^J)
    DiffOp d_1_op;
    DiffOp d_2_op;
};

const std::vector<OpTableEntry>& op_table(int max_order);

} // namespace hyperlab
