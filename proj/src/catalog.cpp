#include "matfree/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace matfree {

namespace {

// Forms below use the golden ratio over the 5th roots of unity:
//   t = (1+sqrt 5)/2 = -z^2-z^3     u = 1/t = t-1 = z+z^4
// Expanding the shorthand before parsing keeps the tables close to how the
// coordinates are usually printed.
std::string expand_golden(const std::string& entry) {
    if (entry == "t") return "-z^2-z^3";
    if (entry == "-t") return "z^2+z^3";
    if (entry == "u") return "z+z^4";
    if (entry == "-u") return "-z-z^4";
    return entry;
}

Arrangement forms(unsigned conductor, unsigned dim,
                  const std::vector<std::vector<const char*>>& rows) {
    std::ostringstream text;
    text << "conductor " << conductor << "\ndim " << dim << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) text << " ; ";
            text << expand_golden(row[i]);
        }
        text << "\n";
    }
    return Arrangement::parse(text.str());
}

// "13,14,15|10,12|5,6" -> {{13,14,15},{10,12},{5,6}}
std::vector<std::vector<int>> blocks_of(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    int value = -1;
    for (char ch : text) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            value = (value < 0 ? 0 : value * 10) + (ch - '0');
            continue;
        }
        if (value >= 0) cur.push_back(value);
        value = -1;
        if (ch == '|') {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (value >= 0) cur.push_back(value);
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

Arrangement h3_arrangement() {
    return forms(5, 3,
                 {{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "0", "1"},
                  {"1", "t", "u"},
                  {"u", "1", "t"},
                  {"t", "u", "1"},
                  {"1", "-t", "u"},
                  {"u", "1", "-t"},
                  {"-t", "u", "1"},
                  {"1", "t", "-u"},
                  {"-u", "1", "t"},
                  {"t", "-u", "1"},
                  {"1", "-t", "-u"},
                  {"-u", "1", "-t"},
                  {"-t", "-u", "1"}});
}

Arrangement h4_arrangement() {
    return forms(
        5, 4,
        {{"1", "0", "0", "0"},   {"0", "1", "0", "0"},   {"0", "0", "1", "0"},
         {"0", "0", "0", "1"},   {"1", "t", "u", "0"},   {"1", "0", "t", "u"},
         {"1", "u", "0", "t"},   {"t", "1", "0", "u"},   {"u", "1", "t", "0"},
         {"0", "1", "u", "t"},   {"t", "u", "1", "0"},   {"0", "t", "1", "u"},
         {"u", "0", "1", "t"},   {"t", "0", "u", "1"},   {"u", "t", "0", "1"},
         {"0", "u", "t", "1"},   {"-1", "t", "u", "0"},  {"1", "-t", "u", "0"},
         {"1", "t", "-u", "0"},  {"-1", "0", "t", "u"},  {"1", "0", "-t", "u"},
         {"1", "0", "t", "-u"},  {"-1", "u", "0", "t"},  {"1", "-u", "0", "t"},
         {"1", "u", "0", "-t"},  {"-t", "1", "0", "u"},  {"t", "-1", "0", "u"},
         {"t", "1", "0", "-u"},  {"-u", "1", "t", "0"},  {"u", "-1", "t", "0"},
         {"u", "1", "-t", "0"},  {"0", "-1", "u", "t"},  {"0", "1", "-u", "t"},
         {"0", "1", "u", "-t"},  {"-t", "u", "1", "0"},  {"t", "-u", "1", "0"},
         {"t", "u", "-1", "0"},  {"0", "-t", "1", "u"},  {"0", "t", "-1", "u"},
         {"0", "t", "1", "-u"},  {"-u", "0", "1", "t"},  {"u", "0", "-1", "t"},
         {"u", "0", "1", "-t"},  {"-t", "0", "u", "1"},  {"t", "0", "-u", "1"},
         {"t", "0", "u", "-1"},  {"-u", "t", "0", "1"},  {"u", "-t", "0", "1"},
         {"u", "t", "0", "-1"},  {"0", "-u", "t", "1"},  {"0", "u", "-t", "1"},
         {"0", "u", "t", "-1"},  {"1", "1", "1", "1"},   {"-1", "1", "1", "1"},
         {"1", "-1", "1", "1"},  {"1", "1", "-1", "1"},  {"1", "1", "1", "-1"},
         {"-1", "-1", "1", "1"}, {"-1", "1", "-1", "1"}, {"-1", "1", "1", "-1"}});
}

Arrangement g25_arrangement() {
    return forms(3, 3,
                 {{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "0", "1"},
                  {"1", "1", "1"},
                  {"1", "1", "z"},
                  {"1", "1", "z^2"},
                  {"1", "z", "1"},
                  {"1", "z", "z"},
                  {"1", "z", "z^2"},
                  {"1", "z^2", "1"},
                  {"1", "z^2", "z"},
                  {"1", "z^2", "z^2"}});
}

Arrangement g26_arrangement() {
    return forms(3, 3,
                 {{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "0", "1"},
                  {"1", "1", "1"},
                  {"1", "1", "z"},
                  {"1", "1", "z^2"},
                  {"1", "z", "1"},
                  {"1", "z", "z"},
                  {"1", "z", "z^2"},
                  {"1", "z^2", "1"},
                  {"1", "z^2", "z"},
                  {"1", "z^2", "z^2"},
                  {"1", "-z", "0"},
                  {"1", "-z^2", "0"},
                  {"1", "-1", "0"},
                  {"1", "0", "-z"},
                  {"1", "0", "-z^2"},
                  {"1", "0", "-1"},
                  {"0", "1", "-z"},
                  {"0", "1", "-z^2"},
                  {"0", "1", "-1"}});
}

Arrangement ex_mat2_arrangement() {
    return forms(1, 3,
                 {{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "0", "1"},
                  {"1", "1", "0"},
                  {"1", "2", "0"},
                  {"0", "1", "1"},
                  {"1", "3", "0"},
                  {"1", "1", "1"},
                  {"2", "3", "0"},
                  {"1", "3", "1"}});
}

Arrangement ex_product_a2_arrangement() {
    return forms(3, 3,
                 {{"1", "0", "0"},
                  {"0", "1", "0"},
                  {"0", "0", "1"},
                  {"1", "-z", "0"},
                  {"1", "0", "-z"},
                  {"1", "-z^2", "0"},
                  {"1", "0", "-z^2"},
                  {"1", "-1", "0"},
                  {"1", "0", "-1"},
                  {"0", "1", "-z"}});
}

// Braid forms x_i - x_j (i < j) in dimension n; rank n-1.
Arrangement braid_arrangement(unsigned n) {
    std::ostringstream text;
    text << "conductor 1\ndim " << n << "\n";
    for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = i + 1; j <= n; ++j) {
            for (unsigned c = 1; c <= n; ++c) {
                if (c > 1) text << " ; ";
                text << (c == i ? "1" : c == j ? "-1" : "0");
            }
            text << "\n";
        }
    return Arrangement::parse(text.str());
}

// The three largest exceptional Weyl arrangements in their standard integer
// coordinates (half-sum roots are scaled by 2; normalization removes the
// difference). E7 and E6 sit inside the E8 coordinates with rank 7 and 6.
Arrangement e_arrangement(unsigned type) {
    std::ostringstream text;
    text << "conductor 1\ndim 8\n";
    auto emit = [&](const std::array<int, 8>& v) {
        for (unsigned c = 0; c < 8; ++c) {
            if (c) text << " ; ";
            text << v[c];
        }
        text << "\n";
    };
    unsigned pair_limit = type == 8 ? 8 : type == 7 ? 6 : 5;
    for (unsigned i = 0; i < pair_limit; ++i)
        for (unsigned j = i + 1; j < pair_limit; ++j) {
            std::array<int, 8> v{};
            v[i] = 1;
            v[j] = -1;
            emit(v);
            v[j] = 1;
            emit(v);
        }
    if (type == 7) {
        std::array<int, 8> v{};
        v[6] = 1;
        v[7] = -1;
        emit(v);
    }
    unsigned free_signs = type == 8 ? 7 : type == 7 ? 6 : 5;
    for (unsigned mask = 0; mask < (1u << free_signs); ++mask) {
        unsigned minus = static_cast<unsigned>(__builtin_popcount(mask));
        std::array<int, 8> v{};
        if (type == 8) {
            // spin roots: signs over coordinates 2..8, even total minus count
            if (minus % 2) continue;
            v[0] = 1;
            for (unsigned b = 0; b < 7; ++b) v[b + 1] = (mask >> b) & 1 ? -1 : 1;
        } else if (type == 7) {
            // roots orthogonal to x7 + x8: odd minus count over 1..6
            if (minus % 2 == 0) continue;
            for (unsigned b = 0; b < 6; ++b) v[b] = (mask >> b) & 1 ? -1 : 1;
            v[6] = -1;
            v[7] = 1;
        } else {
            // roots orthogonal to x6 - x7 and x7 + x8: even minus count over
            // 1..5, last three coordinates fixed
            if (minus % 2) continue;
            for (unsigned b = 0; b < 5; ++b) v[b] = (mask >> b) & 1 ? -1 : 1;
            v[5] = -1;
            v[6] = -1;
            v[7] = 1;
        }
        emit(v);
    }
    return Arrangement::parse(text.str());
}

// Lexicographically least valid partition whose first block is {13,14,15},
// found by exhaustive search. Beware seemingly close variants: hyperplanes
// 5, 12, 13 share the line through (1,1,-1), so after (13,14,15|10,12) the
// pair {5,6} has defect 1 rather than the required 2.
const char* kH3Partition = "13,14,15|1,2|8,9|10,11|5,7|3|4|6|12";
const char* kG25Partition = "7,4,3|8,5|9,6|2,1|10|11|12";
const char* kG26Partition = "12,19,20|16,18|13,15|17,21|10,14|6,11|8,9|7|5|4|3|2|1";
const char* kExProductPartition = "1,2,3|4,5|6,7|8,9|10";
const char* kH4Partition =
    "31,43,48,54|29,38,51|23,34,58|18,20,25|17,59,60|21,47,52|39,41,44|26,32,49|"
    "30,35,40|2,3,42|33,46,50|4,37|27,57|19,24|55,56|10,22|12,45|16,28|15,36|"
    "53|14|13|11|9|8|7|6|5|1";

std::vector<Mat2Step> ex_mat2_steps() {
    return {
        {1, {{1, 1}, {2, 2}, {3, 3}}},
        {3, {{4, 3}}},
        {2, {{6, 2}, {5, 3}}},
        {2, {{8, 2}, {7, 3}}},
        {2, {{10, 2}, {9, 3}}},
    };
}

bool parse_family(const std::string& name, char prefix, unsigned& n) {
    if (name.size() < 2 || name[0] != prefix) return false;
    unsigned value = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
        value = value * 10 + static_cast<unsigned>(name[i] - '0');
        if (value > 1000) return false;
    }
    n = value;
    return true;
}

// "G(r,e,l)" with unsigned decimal components
bool parse_monomial_name(const std::string& name, unsigned& r, unsigned& e, unsigned& l) {
    if (name.size() < 8 || name.compare(0, 2, "G(") != 0 || name.back() != ')') return false;
    unsigned parts[3] = {0, 0, 0};
    int which = 0;
    for (std::size_t i = 2; i + 1 < name.size(); ++i) {
        char ch = name[i];
        if (ch == ',') {
            if (++which > 2) return false;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
        parts[which] = parts[which] * 10 + static_cast<unsigned>(ch - '0');
        if (parts[which] > 1000) return false;
    }
    if (which != 2) return false;
    r = parts[0];
    e = parts[1];
    l = parts[2];
    return true;
}

}  // namespace

Arrangement monomial_arrangement(unsigned r, unsigned e, unsigned l) {
    if (r < 1 || e < 1 || l < 1)
        throw std::invalid_argument("monomial_arrangement: parameters must be positive");
    if (r % e != 0)
        throw std::invalid_argument("monomial_arrangement: e = " + std::to_string(e) +
                                    " does not divide r = " + std::to_string(r));
    bool with_coords = e < r || r == 1;
    std::ostringstream text;
    text << "conductor " << r << "\ndim " << l << "\n";
    auto coord = [&](unsigned c, unsigned i, unsigned j, unsigned k) -> std::string {
        if (c == i) return "1";
        if (c != j) return "0";
        unsigned power = k % r;
        if (power == 0) return "-1";
        if (r == 2) return "1";  // -(-1) over the square roots of unity
        return power == 1 ? "-z" : "-z^" + std::to_string(power);
    };
    if (with_coords)
        for (unsigned i = 1; i <= l; ++i) {
            for (unsigned c = 1; c <= l; ++c) {
                if (c > 1) text << " ; ";
                text << (c == i ? "1" : "0");
            }
            text << "\n";
        }
    for (unsigned i = 1; i <= l; ++i)
        for (unsigned j = i + 1; j <= l; ++j)
            for (unsigned k = 1; k <= r; ++k) {
                for (unsigned c = 1; c <= l; ++c) {
                    if (c > 1) text << " ; ";
                    text << coord(c, i, j, k);
                }
                text << "\n";
            }
    return Arrangement::parse(text.str());
}

std::vector<std::vector<int>> monomial_mat_partition(unsigned r, unsigned l) {
    if (r < 1 || l < 1)
        throw std::invalid_argument("monomial_mat_partition: parameters must be positive");
    std::vector<std::vector<int>> blocks;
    std::vector<int> coords(l);
    for (unsigned i = 1; i <= l; ++i) coords[i - 1] = static_cast<int>(i);
    blocks.push_back(std::move(coords));
    // index of H_{ab}(zeta^k): after the l coordinates, pairs (a,b) in
    // lexicographic order, twists consecutive
    auto index_of = [&](unsigned a, unsigned b, unsigned k) {
        unsigned pair_rank = (a - 1) * l - a * (a - 1) / 2 + (b - a - 1);
        return static_cast<int>(l + pair_rank * r + k);
    };
    for (unsigned i = 2; i <= l; ++i)
        for (unsigned j = 1; j <= r; ++j) {
            std::vector<int> block;
            for (unsigned k = i; k <= l; ++k) block.push_back(index_of(i - 1, k, j));
            blocks.push_back(std::move(block));
        }
    return blocks;
}

CatalogEntry named(const std::string& name) {
    CatalogEntry entry;
    entry.name = name;
    if (name == "H3") {
        entry.arrangement = h3_arrangement();
        entry.mat_blocks = blocks_of(kH3Partition);
        entry.note = "icosahedral reflection arrangement, 15 forms over the 5th roots of unity";
        return entry;
    }
    if (name == "H4") {
        entry.arrangement = h4_arrangement();
        entry.mat_blocks = blocks_of(kH4Partition);
        entry.note = "600-cell reflection arrangement, 60 forms over the 5th roots of unity";
        return entry;
    }
    if (name == "G25") {
        entry.arrangement = g25_arrangement();
        entry.mat_blocks = blocks_of(kG25Partition);
        entry.note = "Hessian reflection arrangement, 12 forms over the cube roots of unity";
        return entry;
    }
    if (name == "G26") {
        entry.arrangement = g26_arrangement();
        entry.mat_blocks = blocks_of(kG26Partition);
        entry.note = "extended Hessian arrangement: the 12 Hessian forms plus the 9 forms of "
                     "G(3,3,3)";
        return entry;
    }
    if (name == "ex-mat2-not-mat") {
        entry.arrangement = ex_mat2_arrangement();
        entry.mat2_steps = ex_mat2_steps();
        entry.note = "10 rational forms admitting a step sequence but no block partition";
        return entry;
    }
    if (name == "ex-product-a2") {
        entry.arrangement = ex_product_a2_arrangement();
        entry.mat_blocks = blocks_of(kExProductPartition);
        entry.note = "10 forms over the cube roots of unity; product partner for "
                     "ex-mat2-not-mat";
        return entry;
    }
    if (name == "E6" || name == "E7" || name == "E8") {
        unsigned type = static_cast<unsigned>(name[1] - '0');
        entry.arrangement = e_arrangement(type);
        entry.note = "exceptional Weyl arrangement in standard 8-coordinate root form";
        return entry;
    }
    unsigned n = 0;
    if (parse_family(name, 'A', n)) {
        if (n < 2) throw std::invalid_argument("catalog: A<n> needs n >= 2");
        entry.arrangement = braid_arrangement(n);
        entry.note = "braid arrangement: forms x_i - x_j in dimension " + std::to_string(n);
        return entry;
    }
    if (parse_family(name, 'B', n)) {
        if (n < 2) throw std::invalid_argument("catalog: B<n> needs n >= 2");
        entry.arrangement = monomial_arrangement(2, 1, n);
        entry.mat_blocks = monomial_mat_partition(2, n);
        entry.note = "hyperoctahedral arrangement: coordinates and x_i -/+ x_j";
        return entry;
    }
    if (parse_family(name, 'D', n)) {
        if (n < 2) throw std::invalid_argument("catalog: D<n> needs n >= 2");
        entry.arrangement = monomial_arrangement(2, 2, n);
        entry.note = "demihyperoctahedral arrangement: forms x_i -/+ x_j";
        return entry;
    }
    unsigned r = 0, e = 0, l = 0;
    if (parse_monomial_name(name, r, e, l)) {
        entry.arrangement = monomial_arrangement(r, e, l);
        if ((e < r || r == 1) && l >= 1) entry.mat_blocks = monomial_mat_partition(r, l);
        entry.note = "imprimitive reflection arrangement G(" + std::to_string(r) + "," +
                     std::to_string(e) + "," + std::to_string(l) + ")";
        return entry;
    }
    // facts-only entries
    for (const char* fname : {"G24", "G27", "G29", "G31", "G32", "G33", "G34"})
        if (name == fname) {
            entry.is_facts = true;
            entry.facts = facts(name);
            entry.note = entry.facts->note;
            return entry;
        }
    throw std::invalid_argument("catalog: unknown name \"" + name + "\"");
}

FactsRecord facts(const std::string& name) {
    FactsRecord f;
    f.name = name;
    if (name == "G24") {
        f.hyperplanes = 21;
        f.exponents = std::vector<int>{1, 9, 11};
        f.restriction_size = 8;
        f.note = "Klein quartic reflection arrangement; every restriction has 8 hyperplanes";
        return f;
    }
    if (name == "G27") {
        f.hyperplanes = 45;
        f.exponents = std::vector<int>{1, 19, 25};
        f.restriction_size = 16;
        f.note = "Valentiner reflection arrangement; every restriction has 16 hyperplanes";
        return f;
    }
    if (name == "G29") {
        f.hyperplanes = 40;
        f.no_free_filtration = true;
        f.note = "no free filtration exists, so no step sequence can build it";
        return f;
    }
    if (name == "G31") {
        f.hyperplanes = 60;
        f.no_free_filtration = true;
        f.note = "no free filtration exists: its minimal free filtration subarrangement is "
                 "already the 40 planes of G29";
        return f;
    }
    if (name == "G32") {
        f.hyperplanes = 40;
        f.exponents = std::vector<int>{1, 7, 13, 19};
        f.note = "9 basis choices up to lattice symmetry, none extends to a partition; "
                 "exponents from the standard tables";
        return f;
    }
    if (name == "G33") {
        f.hyperplanes = 45;
        f.exponents = std::vector<int>{1, 7, 9, 13, 15};
        f.restriction_size = 28;
        f.note = "every restriction has 28 hyperplanes";
        return f;
    }
    if (name == "G34") {
        f.hyperplanes = 126;
        f.exponents = std::vector<int>{1, 13, 19, 25, 31, 37};
        f.restriction_size = 85;
        f.note = "every restriction has 85 hyperplanes";
        return f;
    }
    throw std::invalid_argument("catalog: no facts record for \"" + name + "\"");
}

std::vector<std::string> catalog_names() {
    return {"H3",  "H4",  "G25", "G26", "ex-mat2-not-mat", "ex-product-a2",
            "E6",  "E7",  "E8",  "G24", "G27", "G29", "G31", "G32", "G33", "G34"};
}

}  // namespace matfree
