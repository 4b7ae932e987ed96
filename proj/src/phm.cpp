#include "shforge/phm.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "shforge/util.hpp"

namespace shforge {

EvaluationVector::EvaluationVector(const PrimeField& f, std::vector<std::uint64_t> e)
    : field(f), entries(std::move(e)) {
    if (entries.empty()) throw std::invalid_argument("EvaluationVector: needs at least one entry");
    for (auto& x : entries) x %= field.modulus();
}

bool EvaluationVector::nonrepetitive() const {
    std::vector<std::uint64_t> sorted = entries;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

CodeMatrix::CodeMatrix(int k, const EvaluationVector& v, std::vector<std::uint32_t> column_major)
    : k_(k), source_(v), cols_(std::move(column_major)) {
    if (k_ < 1) throw std::invalid_argument("CodeMatrix: degree bound must be >= 1");
    if (cols_.size() % source_.size() != 0)
        throw std::invalid_argument("CodeMatrix: column data not a multiple of the row count");
    for (std::uint32_t e : cols_)
        if (e >= q()) throw std::invalid_argument("CodeMatrix: entry out of field range");
}

CodeMatrix CodeMatrix::build(int k, const EvaluationVector& v) {
    if (k < 1) throw std::invalid_argument("CodeMatrix::build: degree bound must be >= 1");
    const PrimeField& F = v.field;
    const std::uint64_t q = F.modulus();
    const int r = static_cast<int>(v.size());

    unsigned __int128 m128 = 1;
    for (int i = 0; i < k; ++i) {
        m128 *= q;
        if (m128 > (1u << 24)) throw ResourceError("CodeMatrix::build: q^k exceeds the 2^24 column cap");
    }
    const std::size_t m = static_cast<std::size_t>(m128);

    std::vector<std::uint32_t> cols(m * static_cast<std::size_t>(r));
    // Odometer over coefficient tuples; digits[0] is the constant coefficient
    // and the most significant digit of the column index.
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(k), 0);
    for (std::size_t j = 0; j < m; ++j) {
        for (int i = 0; i < r; ++i) {
            std::uint64_t acc = 0;
            for (int d = k - 1; d >= 0; --d)
                acc = F.add(F.mul(acc, v.entries[static_cast<std::size_t>(i)]), coeffs[static_cast<std::size_t>(d)]);
            cols[j * static_cast<std::size_t>(r) + static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(acc);
        }
        for (int d = k - 1; d >= 0; --d) {
            if (++coeffs[static_cast<std::size_t>(d)] < q) break;
            coeffs[static_cast<std::size_t>(d)] = 0;
        }
    }
    return CodeMatrix(k, v, std::move(cols));
}

Polynomial CodeMatrix::label(std::size_t col) const {
    std::vector<std::uint64_t> coeffs(static_cast<std::size_t>(k_));
    std::uint64_t rem = col;
    for (int d = k_ - 1; d >= 0; --d) {
        coeffs[static_cast<std::size_t>(d)] = rem % q();
        rem /= q();
    }
    return Polynomial(field(), std::move(coeffs));
}

CodeMatrix CodeMatrix::submatrix(const std::vector<std::size_t>& cols) const {
    std::vector<std::uint32_t> data;
    data.reserve(cols.size() * static_cast<std::size_t>(rows()));
    for (std::size_t c : cols) {
        auto span = column(c);
        data.insert(data.end(), span.begin(), span.end());
    }
    return CodeMatrix(k_, source_, std::move(data));
}

std::vector<int> common_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
    if (a.size() != b.size()) throw std::invalid_argument("common_rows: column length mismatch");
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> common_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                             std::span<const std::uint32_t> c) {
    if (a.size() != b.size() || b.size() != c.size())
        throw std::invalid_argument("common_rows: column length mismatch");
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] == b[i] && b[i] == c[i]) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> separating_rows(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                                 std::span<const std::uint32_t> c) {
    if (a.size() != b.size() || b.size() != c.size())
        throw std::invalid_argument("separating_rows: column length mismatch");
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i] && b[i] != c[i] && a[i] != c[i]) out.push_back(static_cast<int>(i));
    return out;
}

namespace {

// sep and |I| for one triple; fails iff sep <= r - 2k + |I|.
inline bool triple_fails(const std::uint32_t* base, int r, int k, std::size_t a, std::size_t b,
                         std::size_t c) {
    const std::uint32_t* A = base + a * static_cast<std::size_t>(r);
    const std::uint32_t* B = base + b * static_cast<std::size_t>(r);
    const std::uint32_t* C = base + c * static_cast<std::size_t>(r);
    int sep = 0, com = 0;
    for (int i = 0; i < r; ++i) {
        const std::uint32_t x = A[i], y = B[i], z = C[i];
        const bool xy = x == y, yz = y == z, xz = x == z;
        com += xy && yz;
        sep += !xy && !yz && !xz;
    }
    return sep <= r - 2 * k + com;
}

SeparationReport make_report(const CodeMatrix& m, std::size_t a, std::size_t b, std::size_t c) {
    SeparationReport rep;
    rep.columns = {a, b, c};
    rep.common = common_rows(m.column(a), m.column(b), m.column(c));
    rep.separating = separating_rows(m.column(a), m.column(b), m.column(c));
    rep.threshold = m.rows() - 2 * m.degree_bound() + static_cast<int>(rep.common.size());
    return rep;
}

// Column pairs agreeing on >= min_agree rows, sorted by (a, b). Columns are
// grouped by their value tuple on each min_agree-subset of rows: two columns
// land in one group iff they agree on that whole subset, so the union over
// subsets is exactly the pairs with agreement >= min_agree and nothing
// below the threshold is ever touched. min_agree above the row count means
// no pair can qualify.
std::vector<std::pair<std::size_t, std::size_t>> pair_agreement_index(const CodeMatrix& m,
                                                                      int min_agree) {
    const std::size_t cols = m.column_count();
    const int r = m.rows();
    min_agree = std::max(min_agree, 1);
    if (min_agree > r) return {};

    std::unordered_set<std::uint64_t> seen;
    std::vector<std::uint32_t> order(cols);
    std::vector<int> sel = first_combination(min_agree);
    do {
        for (std::size_t j = 0; j < cols; ++j) order[j] = static_cast<std::uint32_t>(j);
        auto tuple_less = [&](std::uint32_t a, std::uint32_t b) {
            for (int i : sel) {
                std::uint32_t x = m.entry(i, a), y = m.entry(i, b);
                if (x != y) return x < y;
            }
            return false;
        };
        auto tuple_eq = [&](std::uint32_t a, std::uint32_t b) {
            for (int i : sel)
                if (m.entry(i, a) != m.entry(i, b)) return false;
            return true;
        };
        std::sort(order.begin(), order.end(), tuple_less);
        for (std::size_t lo = 0; lo < cols;) {
            std::size_t hi = lo + 1;
            while (hi < cols && tuple_eq(order[lo], order[hi])) ++hi;
            for (std::size_t x = lo; x < hi; ++x)
                for (std::size_t y = x + 1; y < hi; ++y) {
                    std::uint32_t a = std::min(order[x], order[y]), b = std::max(order[x], order[y]);
                    seen.insert(static_cast<std::uint64_t>(a) * cols + b);
                }
            lo = hi;
        }
    } while (next_combination(sel, r));

    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(seen.size());
    for (std::uint64_t key : seen)
        out.emplace_back(static_cast<std::size_t>(key / cols), static_cast<std::size_t>(key % cols));
    std::sort(out.begin(), out.end());
    return out;
}

bool use_full_path(const CodeMatrix& m, const Check3phOptions& opts) {
    if (opts.mode == Check3phMode::kFull) return true;
    if (opts.mode == Check3phMode::kPruned) return false;
    std::uint64_t triples = binomial_u64(m.column_count(), 3);
    return triples <= opts.full_budget;
}

int pruned_min_agree(const CodeMatrix& m) {
    return std::max(1, (2 * m.degree_bound() + 2) / 3);  // ceil(2k/3)
}

int resolve_threads(const Check3phOptions& opts, std::size_t cols) {
    int n = opts.threads > 0 ? opts.threads : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (static_cast<std::size_t>(n) > cols) n = static_cast<int>(cols);
    return n;
}

// Full lexicographic scan split over first-column indices. Workers claim `a`
// values from a shared counter and record the first failure inside their
// claimed slice, which is that slice's minimum; indices above an already
// known failure are skipped. The merged result is the global lexicographic
// minimum whatever the scheduling was.
std::optional<std::array<std::size_t, 3>> full_scan_parallel(const std::uint32_t* base, int r, int k,
                                                             std::size_t cols, int nthreads) {
    std::atomic<std::size_t> next_a{0};
    std::atomic<std::size_t> best_a{cols};
    std::mutex best_mutex;
    std::optional<std::array<std::size_t, 3>> best;

    auto worker = [&]() {
        for (;;) {
            std::size_t a = next_a.fetch_add(1);
            if (a + 2 >= cols) return;
            if (a > best_a.load()) return;  // claimed indices only grow
            for (std::size_t b = a + 1; b + 1 < cols; ++b)
                for (std::size_t c = b + 1; c < cols; ++c)
                    if (triple_fails(base, r, k, a, b, c)) {
                        std::lock_guard<std::mutex> lock(best_mutex);
                        std::array<std::size_t, 3> tri{a, b, c};
                        if (!best || tri < *best) {
                            best = tri;
                            best_a.store(a);
                        }
                        goto next_claim;  // first (b,c) failure is minimal for this a
                    }
        next_claim:;
        }
    };

    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return best;
}

}  // namespace

std::optional<SeparationReport> find_3ph_violation(const CodeMatrix& m, const Check3phOptions& opts) {
    const std::size_t cols = m.column_count();
    if (cols < 3) return std::nullopt;
    const std::uint32_t* base = m.column(0).data();
    const int r = m.rows(), k = m.degree_bound();

    if (use_full_path(m, opts)) {
        auto tri = full_scan_parallel(base, r, k, cols, resolve_threads(opts, cols));
        if (!tri) return std::nullopt;
        return make_report(m, (*tri)[0], (*tri)[1], (*tri)[2]);
    }

    // Pruned path: candidates are not generated in lexicographic order, so
    // scan them all and keep the minimum.
    std::optional<std::array<std::size_t, 3>> best;
    for (const auto& [a, b] : pair_agreement_index(m, pruned_min_agree(m))) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (c == a || c == b) continue;
            std::array<std::size_t, 3> tri{a, b, c};
            std::sort(tri.begin(), tri.end());
            if (best && !(tri < *best)) continue;
            if (triple_fails(base, r, k, tri[0], tri[1], tri[2])) best = tri;
        }
    }
    if (!best) return std::nullopt;
    return make_report(m, (*best)[0], (*best)[1], (*best)[2]);
}

bool passes_strongly_3ph(const CodeMatrix& m, const Check3phOptions& opts) {
    const std::size_t cols = m.column_count();
    if (cols < 3) return true;
    const std::uint32_t* base = m.column(0).data();
    const int r = m.rows(), k = m.degree_bound();

    if (use_full_path(m, opts)) {
        const int nthreads = resolve_threads(opts, cols);
        if (nthreads <= 1) {
            for (std::size_t a = 0; a + 2 < cols; ++a)
                for (std::size_t b = a + 1; b + 1 < cols; ++b)
                    for (std::size_t c = b + 1; c < cols; ++c)
                        if (triple_fails(base, r, k, a, b, c)) return false;
            return true;
        }
        return !full_scan_parallel(base, r, k, cols, nthreads).has_value();
    }
    for (const auto& [a, b] : pair_agreement_index(m, pruned_min_agree(m)))
        for (std::size_t c = 0; c < cols; ++c) {
            if (c == a || c == b) continue;
            std::array<std::size_t, 3> tri{a, b, c};
            std::sort(tri.begin(), tri.end());
            if (triple_fails(base, r, k, tri[0], tri[1], tri[2])) return false;
        }
    return true;
}

namespace {
// r distinct values from [0, q), in draw order. Floyd's algorithm, so large
// q needs no q-sized pool.
std::vector<std::uint64_t> sample_distinct_field(std::mt19937_64& rng, std::uint64_t q, int r) {
    std::vector<std::uint64_t> out;
    std::unordered_set<std::uint64_t> used;
    for (std::uint64_t i = q - static_cast<std::uint64_t>(r); i < q; ++i) {
        std::uint64_t t = bounded_rand(rng, i + 1);
        if (used.insert(t).second) {
            out.push_back(t);
        } else {
            used.insert(i);
            out.push_back(i);
        }
    }
    return out;
}
}  // namespace

GoodVectorSearch find_good_vector(const PrimeField& field, int k, int r, std::uint64_t seed,
                                  std::uint32_t max_tries, const Check3phOptions& opts) {
    if (k < 2 || k >= r) throw std::invalid_argument("find_good_vector: need r > k >= 2");
    if (static_cast<std::uint64_t>(r) > field.modulus())
        throw std::invalid_argument("find_good_vector: r > q, no nonrepetitive vector exists");

    GoodVectorSearch result;
    std::mt19937_64 rng(seed);
    for (std::uint32_t t = 0; t < max_tries; ++t) {
        std::vector<std::uint64_t> entries;
        if (t == 0) {
            entries.resize(static_cast<std::size_t>(r));
            for (int i = 0; i < r; ++i) entries[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(i);
        } else {
            entries = sample_distinct_field(rng, field.modulus(), r);
        }
        EvaluationVector v(field, std::move(entries));
        ++result.tries;
        if (passes_strongly_3ph(CodeMatrix::build(k, v), opts)) {
            result.vector = std::move(v);
            return result;
        }
        result.rejected.push_back(std::move(v));
    }
    return result;
}

Hypergraph matrix_to_hypergraph(const CodeMatrix& m) {
    const int r = m.rows();
    const std::uint64_t q = m.q();
    if (static_cast<std::uint64_t>(r) * q > static_cast<std::uint64_t>(std::numeric_limits<int>::max()))
        throw ResourceError("matrix_to_hypergraph: r*q vertex ids exceed int range");
    const int n = static_cast<int>(static_cast<std::uint64_t>(r) * q);
    std::vector<std::vector<int>> edges;
    edges.reserve(m.column_count());
    for (std::size_t j = 0; j < m.column_count(); ++j) {
        std::vector<int> edge(static_cast<std::size_t>(r));
        for (int i = 0; i < r; ++i)
            edge[static_cast<std::size_t>(i)] = static_cast<int>(static_cast<std::uint64_t>(i) * q + m.entry(i, j));
        edges.push_back(std::move(edge));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Hypergraph(r, n, std::move(edges));
}

std::string to_phm_string(const CodeMatrix& m) {
    std::ostringstream os;
    os << m.rows() << ' ' << m.column_count() << ' ' << m.q() << ' ' << m.degree_bound() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.column_count(); ++j) {
            if (j) os << ' ';
            os << m.entry(i, j);
        }
        os << '\n';
    }
    const auto& v = m.source_vector().entries;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ' ';
        os << v[i];
    }
    os << '\n';
    return os.str();
}

namespace {
std::vector<std::uint64_t> split_u64(const std::string& line, const char* what) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t next = line.find(' ', pos);
        std::string tok = line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty()) throw std::invalid_argument(std::string(what) + ": malformed spacing");
        std::size_t used = 0;
        unsigned long long val = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(std::string(what) + ": bad integer '" + tok + "'");
        out.push_back(val);
        if (next == std::string::npos) break;
        pos = next + 1;
        if (pos == line.size()) throw std::invalid_argument(std::string(what) + ": trailing space");
    }
    return out;
}
}  // namespace

CodeMatrix parse_phm_string(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) throw std::invalid_argument(".phm: missing trailing newline");
        lines.push_back(text.substr(pos, nl - pos));
        pos = nl + 1;
    }
    if (lines.empty()) throw std::invalid_argument(".phm: empty input");
    auto header = split_u64(lines[0], ".phm header");
    if (header.size() != 4) throw std::invalid_argument(".phm header: expected 'r m q k'");
    const std::uint64_t r = header[0], m = header[1], q = header[2], k = header[3];
    if (r < 1 || k < 1) throw std::invalid_argument(".phm header: r and k must be >= 1");
    if (lines.size() != r + 2) throw std::invalid_argument(".phm: row count disagrees with header");

    PrimeField field(q);
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::uint64_t i = 0; i < r; ++i) {
        rows.push_back(split_u64(lines[static_cast<std::size_t>(i) + 1], ".phm row"));
        if (rows.back().size() != m) throw std::invalid_argument(".phm row: wrong column count");
    }
    auto ventries = split_u64(lines[static_cast<std::size_t>(r) + 1], ".phm vector");
    if (ventries.size() != r) throw std::invalid_argument(".phm vector: wrong length");
    for (std::uint64_t e : ventries)
        if (e >= q) throw std::invalid_argument(".phm vector: entry out of range");
    EvaluationVector v(field, std::move(ventries));

    std::vector<std::uint32_t> data(static_cast<std::size_t>(m) * static_cast<std::size_t>(r));
    for (std::uint64_t j = 0; j < m; ++j)
        for (std::uint64_t i = 0; i < r; ++i) {
            std::uint64_t e = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (e >= q) throw std::invalid_argument(".phm: entry out of range");
            data[static_cast<std::size_t>(j) * r + static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(e);
        }
    return CodeMatrix(static_cast<int>(k), v, std::move(data));
}

void write_phm_file(const CodeMatrix& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << to_phm_string(m);
}

CodeMatrix read_phm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_phm_string(buf.str());
}

}  // namespace shforge
