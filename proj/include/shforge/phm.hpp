#ifndef SHFORGE_PHM_HPP
#define SHFORGE_PHM_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shforge/ff.hpp"
#include "shforge/hypergraph.hpp"

namespace shforge {

/// Evaluation points (alpha_1, ..., alpha_r) over a prime field.
struct EvaluationVector {
    PrimeField field;
    std::vector<std::uint64_t> entries;

    EvaluationVector(const PrimeField& f, std::vector<std::uint64_t> e);

    std::size_t size() const noexcept { return entries.size(); }
    /// All entries pairwise distinct.
    bool nonrepetitive() const;
};

/// An r x m matrix over GF(q) built by evaluating every polynomial of degree
/// < k at an evaluation vector: the column labeled f is (f(a_1),...,f(a_r)).
/// Labels are enumerated in lexicographic coefficient order with the
/// constant coefficient most significant, so column indices are reproducible
/// across runs and languages. Entries are stored column-major.
class CodeMatrix {
public:
    /// The q^k evaluation columns for degree bound k >= 1 over v's field.
    static CodeMatrix build(int k, const EvaluationVector& v);

    /// Wraps externally supplied columns (used by the .phm reader and by
    /// sub-matrix tests); entries must lie in [0, q).
    CodeMatrix(int k, const EvaluationVector& v, std::vector<std::uint32_t> column_major);

    int rows() const noexcept { return static_cast<int>(source_.size()); }
    std::size_t column_count() const noexcept { return cols_.size() / source_.size(); }
    int degree_bound() const noexcept { return k_; }
    std::uint64_t q() const noexcept { return source_.field.modulus(); }
    const PrimeField& field() const noexcept { return source_.field; }
    const EvaluationVector& source_vector() const noexcept { return source_; }

    std::uint32_t entry(int row, std::size_t col) const {
        return cols_[col * static_cast<std::size_t>(rows()) + static_cast<std::size_t>(row)];
    }
    std::span<const std::uint32_t> column(std::size_t col) const {
        return {cols_.data() + col * static_cast<std::size_t>(rows()), static_cast<std::size_t>(rows())};
    }

    /// The polynomial labeling column j of a built matrix (the j-th element
    /// of the coefficient-lexicographic enumeration).
    Polynomial label(std::size_t col) const;

    /// Restriction to a subset of columns (keeps r, k, q and the vector).
    CodeMatrix submatrix(const std::vector<std::size_t>& cols) const;

private:
    int k_;
    EvaluationVector source_;
    std::vector<std::uint32_t> cols_;
};

/// Rows where all given columns agree.
std::vector<int> common_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);
std::vector<int> common_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                             std::span<const std::uint32_t> c);

/// Rows where the three entries are pairwise distinct.
std::vector<int> separating_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                 std::span<const std::uint32_t> c);

/// Evidence that a column triple misses the strongly-3-perfect-hashing
/// margin: it must be separated by MORE than r - 2k + |I| rows, where I is
/// the triple's common-row set.
struct SeparationReport {
    std::array<std::size_t, 3> columns{};
    std::vector<int> common;
    std::vector<int> separating;
    int threshold = 0;
    bool passes() const { return static_cast<int>(separating.size()) > threshold; }
};

enum class Check3phMode {
    kAuto,    // full enumeration up to the triple budget, pruned beyond it
    kFull,    // always enumerate all C(m,3) triples
    kPruned,  // always use the pair-agreement index
};

struct Check3phOptions {
    Check3phMode mode = Check3phMode::kAuto;
    /// kAuto switches to the pruned path above this many triples.
    std::uint64_t full_budget = 100'000'000;
    /// Worker count for the full-enumeration scan; 0 means all hardware
    /// cores. The verdict and the reported triple do not depend on it.
    int threads = 0;
};

/// Returns the lexicographically first failing triple, or nullopt when the
/// matrix is strongly 3-perfect hashing. Triples whose threshold r-2k+|I| is
/// negative pass vacuously.
///
/// The pruned path only examines triples containing a pair of columns that
/// agree on at least max(1, ceil(2k/3)) rows: a failing triple has at least
/// 2k - 2|I| rows where exactly two entries agree, so some pair agrees on
/// |I| + ceil((2k-2|I|)/3) >= ceil(2k/3) rows.
std::optional<SeparationReport> find_3ph_violation(const CodeMatrix& m, const Check3phOptions& opts = {});

inline bool is_strongly_3ph(const CodeMatrix& m, const Check3phOptions& opts = {}) {
    return !find_3ph_violation(m, opts).has_value();
}

/// Pass/fail only, early exit on the first violation found in scan order.
/// Same verdict as find_3ph_violation; used inside the vector search.
bool passes_strongly_3ph(const CodeMatrix& m, const Check3phOptions& opts = {});

struct GoodVectorSearch {
    std::optional<EvaluationVector> vector;  // empty on search failure
    std::uint32_t tries = 0;                 // candidates tested, identity included
    std::vector<EvaluationVector> rejected;  // candidates that failed verification
};

/// Deterministic-first search for an evaluation vector whose matrix is
/// strongly 3-perfect hashing: the identity vector (0,1,...,r-1) first, then
/// seeded random nonrepetitive vectors. Requires q prime, r > k >= 2 and
/// r <= q (std::invalid_argument otherwise). Exhausting max_tries is a
/// legitimate outcome below the q > 4^r k^2 regime.
GoodVectorSearch find_good_vector(const PrimeField& field, int k, int r, std::uint64_t seed,
                                  std::uint32_t max_tries, const Check3phOptions& opts = {});

/// The r-partite r-graph of a matrix: n = r*q vertices, vertex (i, alpha)
/// numbered (i-1)*q + alpha, edge j = {(i, c_ij) : i in [r]}. Duplicate
/// columns collapse to one edge; built matrices with k <= r and a
/// nonrepetitive vector have none.
Hypergraph matrix_to_hypergraph(const CodeMatrix& m);

// Text format (.phm): line 1 is "r m q k"; then r lines of m space-separated
// values in [0, q); then one line with the r evaluation-vector entries.
// Strict parse, byte-exact round-trip.
std::string to_phm_string(const CodeMatrix& m);
CodeMatrix parse_phm_string(const std::string& text);
void write_phm_file(const CodeMatrix& m, const std::string& path);
CodeMatrix read_phm_file(const std::string& path);

}  // namespace shforge

#endif
