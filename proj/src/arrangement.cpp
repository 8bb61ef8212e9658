#include "matfree/arrangement.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace matfree {

unsigned rref_in_place(std::vector<Covector>& rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const Covector& r) { return r.empty(); }),
               rows.end());
    if (rows.empty()) return 0;
    std::size_t cols = rows[0].size();
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[pivot_row], rows[sel]);
        const CycloScalar inv = rows[pivot_row][col].inverse();
        for (std::size_t c = col; c < cols; ++c)
            rows[pivot_row][c] = rows[pivot_row][c] * inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col].is_zero()) continue;
            const CycloScalar f = rows[r][col];
            for (std::size_t c = col; c < cols; ++c)
                rows[r][c] = rows[r][c] - f * rows[pivot_row][c];
        }
        ++pivot_row;
    }
    rows.resize(pivot_row);
    return static_cast<unsigned>(pivot_row);
}

bool in_row_span(const std::vector<Covector>& rref_rows, Covector v) {
    for (const auto& row : rref_rows) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot].is_zero()) ++pivot;
        if (pivot >= v.size()) continue;
        if (v[pivot].is_zero()) continue;
        const CycloScalar f = v[pivot];
        for (std::size_t c = pivot; c < v.size(); ++c) v[c] = v[c] - f * row[c];
    }
    return std::all_of(v.begin(), v.end(), [](const CycloScalar& e) { return e.is_zero(); });
}

namespace {

std::size_t hash_covector(const Covector& v) {
    std::size_t h = v.size();
    for (const auto& e : v) h ^= e.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

unsigned common_conductor(const Covector& v, const char* what) {
    if (v.empty()) throw std::invalid_argument(std::string(what) + ": empty covector");
    unsigned n = v[0].conductor();
    for (const auto& e : v)
        if (e.conductor() != n)
            throw std::invalid_argument(std::string(what) + ": mixed conductors in covector");
    return n;
}

}  // namespace

Hyperplane::Hyperplane(Covector covector) : covector_(std::move(covector)) {
    conductor_ = common_conductor(covector_, "hyperplane");
    std::size_t lead = 0;
    while (lead < covector_.size() && covector_[lead].is_zero()) ++lead;
    if (lead == covector_.size())
        throw std::invalid_argument("hyperplane: zero covector");
    if (!(covector_[lead] == CycloScalar::from_rational(Rational(1), conductor_))) {
        const CycloScalar inv = covector_[lead].inverse();
        for (auto& e : covector_) e = e * inv;
    }
}

Hyperplane Hyperplane::lifted(unsigned conductor) const {
    Covector v;
    v.reserve(covector_.size());
    for (const auto& e : covector_) v.push_back(e.lifted(conductor));
    return Hyperplane(std::move(v));
}

std::size_t Hyperplane::hash() const { return hash_covector(covector_); }

std::string Hyperplane::str() const {
    std::string out;
    for (std::size_t i = 0; i < covector_.size(); ++i) {
        if (i) out += " ; ";
        out += covector_[i].str();
    }
    return out;
}

Subspace::Subspace(unsigned dim, unsigned conductor, std::vector<Covector> annihilator_span)
    : dim_(dim), conductor_(conductor), annihilator_(std::move(annihilator_span)) {
    for (const auto& row : annihilator_)
        if (row.size() != dim_)
            throw std::invalid_argument("subspace: annihilator covector of wrong dimension");
    rref_in_place(annihilator_);
}

int Subspace::compare(const Subspace& a, const Subspace& b) {
    if (a.codim() != b.codim()) return a.codim() < b.codim() ? -1 : 1;
    for (std::size_t r = 0; r < a.annihilator_.size(); ++r)
        for (std::size_t c = 0; c < a.annihilator_[r].size(); ++c) {
            int cmp = CycloScalar::compare(a.annihilator_[r][c], b.annihilator_[r][c]);
            if (cmp != 0) return cmp;
        }
    return 0;
}

std::size_t Subspace::hash() const {
    std::size_t h = (static_cast<std::size_t>(dim_) << 8) ^ annihilator_.size();
    for (const auto& row : annihilator_)
        h ^= hash_covector(row) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

std::string Subspace::str() const {
    if (annihilator_.empty()) return "<whole space>";
    std::string out;
    for (std::size_t r = 0; r < annihilator_.size(); ++r) {
        if (r) out += " | ";
        for (std::size_t c = 0; c < annihilator_[r].size(); ++c) {
            if (c) out += " ; ";
            out += annihilator_[r][c].str();
        }
    }
    return out;
}

Arrangement::Arrangement(unsigned dim, unsigned conductor) : dim_(dim), conductor_(conductor) {
    if (dim == 0) throw std::invalid_argument("arrangement: dim must be >= 1");
    if (conductor == 0) throw std::invalid_argument("arrangement: conductor must be >= 1");
}

void Arrangement::add(Hyperplane h) {
    if (h.dim() != dim_)
        throw std::invalid_argument("arrangement: hyperplane dimension mismatch");
    if (h.conductor() != conductor_)
        throw std::invalid_argument("arrangement: hyperplane conductor mismatch");
    if (index_of(h))
        throw std::invalid_argument("arrangement: duplicate hyperplane " + h.str());
    hyperplanes_.push_back(std::move(h));
}

std::optional<std::size_t> Arrangement::index_of(const Hyperplane& h) const {
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
        if (hyperplanes_[i] == h) return i;
    return std::nullopt;
}

Arrangement Arrangement::select(const std::vector<int>& indices) const {
    Arrangement out(dim_, conductor_);
    for (int i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= hyperplanes_.size())
            throw std::invalid_argument("arrangement: index out of range");
        out.add(hyperplanes_[static_cast<std::size_t>(i)]);
    }
    return out;
}

Arrangement Arrangement::parse(const std::string& text, unsigned conductor_limit) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::optional<unsigned> conductor, dim;
    std::optional<Arrangement> arr;
    std::vector<std::pair<Hyperplane, int>> seen;  // for duplicate line reporting
    auto err = [](int ln, const std::string& what) -> ParseError {
        return ParseError("line " + std::to_string(ln) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hashpos = line.find('#'); hashpos != std::string::npos)
            line.erase(hashpos);
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        std::istringstream fields(line);
        std::string keyword;
        fields >> keyword;
        if (keyword == "conductor" || keyword == "dim") {
            if (arr) throw err(lineno, keyword + " after hyperplane lines");
            long value = -1;
            if (!(fields >> value) || value < 1)
                throw err(lineno, keyword + " needs a positive integer");
            std::string extra;
            if (fields >> extra) throw err(lineno, "trailing text after " + keyword);
            auto& slot = keyword == "conductor" ? conductor : dim;
            if (slot) throw err(lineno, "repeated " + keyword);
            slot = static_cast<unsigned>(value);
            if (keyword == "conductor" && conductor_limit > 0 && *conductor > conductor_limit)
                throw err(lineno, "conductor " + std::to_string(*conductor) +
                                      " exceeds the limit " + std::to_string(conductor_limit));
            continue;
        }
        if (!conductor || !dim)
            throw err(lineno, "hyperplane line before conductor/dim headers");
        if (!arr) arr.emplace(*dim, *conductor);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            auto sep = line.find(';', pos);
            parts.push_back(line.substr(pos, sep == std::string::npos ? sep : sep - pos));
            if (sep == std::string::npos) break;
            pos = sep + 1;
        }
        if (parts.size() != *dim)
            throw err(lineno, "expected " + std::to_string(*dim) + " entries, got " +
                                  std::to_string(parts.size()));
        Covector v;
        v.reserve(parts.size());
        for (const auto& p : parts) {
            try {
                v.push_back(CycloScalar::parse(p, *conductor));
            } catch (const std::invalid_argument& e) {
                throw err(lineno, e.what());
            }
        }
        std::optional<Hyperplane> h;
        try {
            h.emplace(std::move(v));
        } catch (const std::invalid_argument& e) {
            throw err(lineno, e.what());
        }
        for (const auto& [prev, prev_line] : seen)
            if (prev == *h)
                throw err(lineno, "duplicate hyperplane (same as line " +
                                      std::to_string(prev_line) + ")");
        seen.emplace_back(*h, lineno);
        arr->add(std::move(*h));
    }
    if (!conductor || !dim) throw ParseError("missing conductor/dim headers");
    if (!arr) arr.emplace(*dim, *conductor);
    return std::move(*arr);
}

std::string Arrangement::emit() const {
    std::string out = "conductor " + std::to_string(conductor_) + "\n" +
                      "dim " + std::to_string(dim_) + "\n";
    for (const auto& h : hyperplanes_) out += h.str() + "\n";
    return out;
}

unsigned rank(const std::vector<Hyperplane>& hyperplanes) {
    std::vector<Covector> rows;
    rows.reserve(hyperplanes.size());
    for (const auto& h : hyperplanes) rows.push_back(h.covector());
    return rref_in_place(rows);
}

unsigned rank(const Arrangement& a) { return rank(a.hyperplanes()); }

Subspace intersection_of(const std::vector<Hyperplane>& hyperplanes, unsigned dim,
                         unsigned conductor) {
    std::vector<Covector> rows;
    rows.reserve(hyperplanes.size());
    for (const auto& h : hyperplanes) {
        if (h.dim() != dim || h.conductor() != conductor)
            throw std::invalid_argument("intersection: hyperplane outside the ambient space");
        rows.push_back(h.covector());
    }
    return Subspace(dim, conductor, std::move(rows));
}

Subspace intersection_subspace(const Arrangement& a, const std::vector<int>& indices) {
    std::vector<Hyperplane> hs;
    hs.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= a.size())
            throw std::invalid_argument("intersection: index out of range");
        hs.push_back(a[static_cast<std::size_t>(i)]);
    }
    return intersection_of(hs, a.dim(), a.conductor());
}

bool subspace_in_hyperplane(const Subspace& x, const Hyperplane& h) {
    if (x.dim() != h.dim() || x.conductor() != h.conductor())
        throw std::invalid_argument("containment test outside the ambient space");
    return in_row_span(x.annihilator(), h.covector());
}

std::vector<Subspace> restriction(const Arrangement& a, const Hyperplane& h) {
    if (h.dim() != a.dim() || h.conductor() != a.conductor())
        throw std::invalid_argument("restriction: hyperplane outside the ambient space");
    std::unordered_set<Subspace, SubspaceHash> distinct;
    for (const auto& k : a.hyperplanes()) {
        if (k == h) continue;
        distinct.insert(intersection_of({h, k}, a.dim(), a.conductor()));
    }
    std::vector<Subspace> out(distinct.begin(), distinct.end());
    std::sort(out.begin(), out.end(),
              [](const Subspace& x, const Subspace& y) { return Subspace::compare(x, y) < 0; });
    return out;
}

Arrangement localization(const Arrangement& a, const Subspace& x) {
    Arrangement out(a.dim(), a.conductor());
    for (const auto& h : a.hyperplanes())
        if (subspace_in_hyperplane(x, h)) out.add(h);
    return out;
}

Arrangement product(const Arrangement& a, const Arrangement& b) {
    unsigned n = std::lcm(a.conductor(), b.conductor());
    Arrangement out(a.dim() + b.dim(), n);
    const CycloScalar zero = CycloScalar::from_rational(Rational(0), n);
    for (const auto& h : a.hyperplanes()) {
        Covector v;
        v.reserve(out.dim());
        for (const auto& e : h.covector()) v.push_back(e.lifted(n));
        v.resize(out.dim(), zero);
        out.add(Hyperplane(std::move(v)));
    }
    for (const auto& h : b.hyperplanes()) {
        Covector v(a.dim(), zero);
        for (const auto& e : h.covector()) v.push_back(e.lifted(n));
        out.add(Hyperplane(std::move(v)));
    }
    return out;
}

}  // namespace matfree
