#pragma once

// Finite-alphabet symbolic dynamics: words, finite samples, the theta-metric,
// variation/Lipschitz seminorms of finite-range observables, and the packed
// base-|A| codes used everywhere else to index blocks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gibbslab/errors.hpp"

namespace gibbslab {

using Symbol = int;

struct Alphabet {
    int size = 2;

    Alphabet() = default;
    explicit Alphabet(int s) : size(s) {
        if (s < 2) throw invalid_input("alphabet size must be at least 2, got " + std::to_string(s));
    }
    bool contains(Symbol a) const { return a >= 0 && a < size; }
    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

namespace detail {

inline void check_symbols(const Alphabet& a, const std::vector<Symbol>& s, const char* what) {
    for (Symbol x : s)
        if (!a.contains(x))
            throw invalid_input(std::string(what) + ": symbol " + std::to_string(x) +
                                " outside alphabet of size " + std::to_string(a.size));
}

} // namespace detail

// |A|^k as a table index, with an overflow check.  Block enumeration is capped
// at 2^26 cells by callers that allocate tables of this size.
inline std::size_t alphabet_power(int alphabet_size, int k) {
    if (k < 0) throw invalid_input("negative block length");
    std::size_t p = 1;
    for (int i = 0; i < k; ++i) {
        if (p > (std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(alphabet_size)))
            throw invalid_input("alphabet_power overflow: " + std::to_string(alphabet_size) +
                                "^" + std::to_string(k));
        p *= static_cast<std::size_t>(alphabet_size);
    }
    return p;
}

inline constexpr std::size_t kBlockTableBudget = std::size_t{1} << 26;

inline std::size_t checked_block_count(int alphabet_size, int k, const char* what) {
    std::size_t c = alphabet_power(alphabet_size, k);
    if (c > kBlockTableBudget)
        throw invalid_input(std::string(what) + ": block table " + std::to_string(alphabet_size) +
                            "^" + std::to_string(k) + " exceeds enumeration budget");
    return c;
}

// A k-block w_0 ... w_{k-1}.  Nonempty by construction.
struct Word {
    Alphabet alphabet;
    std::vector<Symbol> symbols;

    Word(Alphabet a, std::vector<Symbol> s) : alphabet(a), symbols(std::move(s)) {
        if (symbols.empty()) throw invalid_input("empty word");
        detail::check_symbols(alphabet, symbols, "word");
    }
    int length() const { return static_cast<int>(symbols.size()); }
};

// A finite sample x_0 ... x_{n-1} from the shift space.  Same representation
// as Word; kept distinct because samples are long and words are short, and
// the two play different roles in every signature.
struct SymbolSequence {
    Alphabet alphabet;
    std::vector<Symbol> symbols;

    SymbolSequence(Alphabet a, std::vector<Symbol> s) : alphabet(a), symbols(std::move(s)) {
        if (symbols.empty()) throw invalid_input("empty sequence");
        detail::check_symbols(alphabet, symbols, "sequence");
    }
    std::size_t length() const { return symbols.size(); }
    Symbol operator[](std::size_t j) const { return symbols[j]; }
};

struct MetricParams {
    double theta = 0.5;

    MetricParams() = default;
    explicit MetricParams(double t) : theta(t) {
        if (!(t > 0.0 && t < 1.0))
            throw invalid_input("metric parameter theta must lie in (0,1), got " + std::to_string(t));
    }
};

// d(x, y) = theta^N where N is the length of the longest common prefix over
// the compared range min(|x|, |y|).  Identical over that range -> 0; first
// symbols differ -> 1.
inline double d_theta(const SymbolSequence& x, const SymbolSequence& y, const MetricParams& p) {
    if (!(x.alphabet == y.alphabet)) throw invalid_input("d_theta: alphabet mismatch");
    std::size_t m = std::min(x.length(), y.length());
    std::size_t agree = 0;
    while (agree < m && x[agree] == y[agree]) ++agree;
    if (agree == m) return 0.0;
    return std::pow(p.theta, static_cast<double>(agree));
}

// Pack w_0 ... w_{k-1} into sum_j w_j |A|^{k-1-j} (w_0 most significant).
inline std::size_t pack_block(const std::vector<Symbol>& symbols, int alphabet_size) {
    std::size_t code = 0;
    for (Symbol s : symbols) code = code * static_cast<std::size_t>(alphabet_size) + static_cast<std::size_t>(s);
    return code;
}

inline std::size_t pack_block(const Word& w) { return pack_block(w.symbols, w.alphabet.size); }

inline std::vector<Symbol> unpack_block(std::size_t code, int length, int alphabet_size) {
    std::vector<Symbol> out(static_cast<std::size_t>(length));
    for (int j = length - 1; j >= 0; --j) {
        out[static_cast<std::size_t>(j)] = static_cast<Symbol>(code % static_cast<std::size_t>(alphabet_size));
        code /= static_cast<std::size_t>(alphabet_size);
    }
    if (code != 0) throw invalid_input("unpack_block: code does not fit in given length");
    return out;
}

// Render a block as a digit string ("0110"); comma-separated when symbols can
// exceed one digit.  parse_block_string inverts this.
inline std::string block_to_string(const std::vector<Symbol>& symbols, int alphabet_size) {
    std::string out;
    bool commas = alphabet_size > 10;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (commas && i > 0) out += ',';
        out += std::to_string(symbols[i]);
    }
    return out;
}

inline std::vector<Symbol> parse_block_string(const std::string& text, const Alphabet& a) {
    std::vector<Symbol> out;
    if (text.empty()) throw invalid_input("empty block string");
    if (a.size > 10 || text.find(',') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t comma = text.find(',', pos);
            std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw invalid_input("block string has empty component: '" + text + "'");
            std::size_t used = 0;
            int v;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                throw invalid_input("block string component not a number: '" + tok + "'");
            }
            if (used != tok.size()) throw invalid_input("block string component not a number: '" + tok + "'");
            out.push_back(v);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9') throw invalid_input("block string has non-digit '" + std::string(1, c) + "'");
            out.push_back(c - '0');
        }
    }
    detail::check_symbols(a, out, "block string");
    return out;
}

// x~ : the n-periodic extension of a sample, evaluated at any coordinate.
inline Symbol periodic_index(const SymbolSequence& x, std::uint64_t j) {
    return x[j % x.length()];
}

// An observable depending on coordinates 0..range of the sequence, stored as
// a dense table over (range+1)-blocks.  range = 0 means a function of the
// single symbol x_0.
struct BlockFunction {
    Alphabet alphabet;
    int range = 0;
    std::vector<double> values; // indexed by packed (range+1)-block

    BlockFunction(Alphabet a, int r, std::vector<double> v)
        : alphabet(a), range(r), values(std::move(v)) {
        if (r < 0) throw invalid_input("block function range must be >= 0");
        std::size_t want = checked_block_count(alphabet.size, r + 1, "block function");
        if (values.size() != want)
            throw invalid_input("block function needs " + std::to_string(want) + " values, got " +
                                std::to_string(values.size()));
    }

    double operator()(std::size_t block_code) const { return values[block_code]; }

    // Evaluate on the window x_j ... x_{j+range} of the periodic extension.
    double window(const SymbolSequence& x, std::uint64_t j) const {
        std::size_t code = 0;
        for (int i = 0; i <= range; ++i)
            code = code * static_cast<std::size_t>(alphabet.size) +
                   static_cast<std::size_t>(periodic_index(x, j + static_cast<std::uint64_t>(i)));
        return values[code];
    }
};

// m-th variation: sup |f(x) - f(y)| over pairs agreeing on coordinates 0..m.
// Exact by enumeration: group (range+1)-blocks by their first m+1 symbols and
// take the largest spread.  Zero when m >= range.
inline double var_m(const BlockFunction& f, int m) {
    if (m < 0) throw invalid_input("var_m: m must be >= 0");
    if (m >= f.range) return 0.0;
    std::size_t tail = alphabet_power(f.alphabet.size, f.range - m);
    std::size_t groups = alphabet_power(f.alphabet.size, m + 1);
    double worst = 0.0;
    for (std::size_t g = 0; g < groups; ++g) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::size_t t = 0; t < tail; ++t) {
            double v = f.values[g * tail + t];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
    }
    return worst;
}

// |f|_theta = max_m var_m(f) / theta^m, finite (max over m < range).
inline double lipschitz_seminorm(const BlockFunction& f, const MetricParams& p) {
    double out = 0.0;
    double scale = 1.0;
    for (int m = 0; m < f.range; ++m) {
        out = std::max(out, var_m(f, m) / scale);
        scale *= p.theta;
    }
    return out;
}

// (1/N) sum_{j=0}^{N-1} f(x_j .. x_{j+range}) over the N = |x| - range full
// windows of the sample.  Requires at least one full window.
inline double birkhoff_average(const BlockFunction& f, const SymbolSequence& x) {
    if (!(f.alphabet == x.alphabet)) throw invalid_input("birkhoff_average: alphabet mismatch");
    if (x.length() < static_cast<std::size_t>(f.range) + 1)
        throw invalid_input("birkhoff_average: sample shorter than one window");
    std::size_t windows = x.length() - static_cast<std::size_t>(f.range);
    long double acc = 0.0L;
    for (std::size_t j = 0; j < windows; ++j) acc += f.window(x, j);
    return static_cast<double>(acc / static_cast<long double>(windows));
}

// (1/n) sum_{j=0}^{n-1} f(x~_j .. x~_{j+range}) over the periodic extension:
// exactly n windows, the last ones wrapping around.
inline double birkhoff_average_periodic(const BlockFunction& f, const SymbolSequence& x) {
    if (!(f.alphabet == x.alphabet)) throw invalid_input("birkhoff_average: alphabet mismatch");
    long double acc = 0.0L;
    for (std::size_t j = 0; j < x.length(); ++j) acc += f.window(x, j);
    return static_cast<double>(acc / static_cast<long double>(x.length()));
}

} // namespace gibbslab
