#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matfree/arrangement.hpp"
#include "matfree/catalog.hpp"
#include "matfree/matkernel.hpp"
#include "matfree/search.hpp"

using namespace matfree;

namespace {

// Exit codes are a scripting contract:
//   0  mathematical success / verdict obtained
//   1  verification failed, assertion (--expect) missed, or filter rejected
//   2  usage, parse, or missing-data error
//   3  search node budget exceeded
constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << text;
}

// An arrangement input: "catalog:NAME" pulls a built-in entry, anything else
// is a path to an arrangement file.
struct Source {
    std::string spec;
    std::optional<CatalogEntry> entry;  // set for catalog sources
    std::optional<Arrangement> a;       // unset only for facts-only entries
};

Source resolve_source(const std::string& spec, unsigned conductor_limit) {
    Source src;
    src.spec = spec;
    if (spec.rfind("catalog:", 0) == 0) {
        src.entry = named(spec.substr(8));
        if (src.entry->arrangement) src.a = *src.entry->arrangement;
        return src;
    }
    Arrangement parsed = Arrangement::parse(read_file(spec), conductor_limit);
    src.a = parsed;
    return src;
}

const Arrangement& need_arrangement(const Source& src) {
    if (!src.a)
        throw std::invalid_argument(src.spec +
                                    ": facts-only entry, no defining forms available");
    return *src.a;
}

std::string join(const std::vector<int>& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

std::string blocks_inline(const std::vector<std::vector<int>>& blocks) {
    std::string s = "(";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (b) s += "|";
        s += join(blocks[b], ",");
    }
    return s + ")";
}

// "(1,2,3|4,5|6)" or "1,2,3|4,5|6" -> blocks
std::vector<std::vector<int>> parse_blocks_inline(const std::string& text) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    int value = -1;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            value = (value < 0 ? 0 : value * 10) + (ch - '0');
            continue;
        }
        if (value >= 0) cur.push_back(value);
        value = -1;
        if (ch == '|') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != ',' && ch != '(' && ch != ')' && ch != ' ' && ch != '\t') {
            throw ParseError(std::string("blocks: unexpected character '") + ch + "'");
        }
    }
    if (value >= 0) cur.push_back(value);
    if (!cur.empty()) out.push_back(cur);
    if (out.empty()) throw ParseError("blocks: empty");
    return out;
}

void print_step_report(const StepReport& r, bool mat2) {
    std::string head = "step " + std::to_string(r.step);
    if (mat2) head += " (s=" + std::to_string(r.slot_start) + ")";
    if (r.passed()) {
        std::cout << head << " ok: members " << join(r.members);
        if (mat2) std::cout << ", slots " << join(r.slots);
        std::cout << ", exponents now " << join(r.exponents_after) << "\n";
        return;
    }
    std::cout << head << " FAILED: " << r.failed_condition() << "\n";
    if (!r.avoid_ok && r.blocking_prefix)
        std::cout << "  intersection lies inside hyperplane " << r.blocking_prefix << "\n";
    for (const auto& d : r.defects)
        if (d.value != d.required)
            std::cout << "  H" << d.index << ": required defect " << d.required
                      << ", got " << d.value << "\n";
}

int report_mat(const MatVerification& v) {
    for (const auto& r : v.certificate.reports) print_step_report(r, false);
    if (!v.ok) {
        std::cout << "not verified: step " << v.failed_step << " " << v.reason << "\n";
        return kFailed;
    }
    std::cout << "verified: MAT partition, " << v.certificate.blocks.size()
              << " blocks, exponents " << join(v.certificate.exponents) << "\n";
    return kOk;
}

int report_mat2(const Mat2Verification& v) {
    for (const auto& r : v.certificate.reports) print_step_report(r, true);
    if (!v.ok) {
        std::cout << "not verified: step " << v.failed_step << " " << v.reason << "\n";
        return kFailed;
    }
    std::cout << "verified: MAT2 sequence, " << v.certificate.steps.size()
              << " steps, exponents " << join(v.certificate.exponents) << "\n";
    return kOk;
}

int cmd_verify(const std::string& source_spec, const std::string& cert_spec,
               bool builtin, const std::string& out_path, unsigned conductor_limit) {
    Source src = resolve_source(source_spec, conductor_limit);
    const Arrangement& a = need_arrangement(src);

    Certificate cert{MatCertificate{}};
    if (builtin || cert_spec.empty()) {
        if (!src.entry)
            throw std::invalid_argument(
                "no certificate given and the source is not a catalog entry");
        if (!src.entry->mat_blocks.empty()) {
            MatCertificate c;
            c.arrangement = src.entry->name;
            c.blocks = src.entry->mat_blocks;
            cert = c;
        } else if (!src.entry->mat2_steps.empty()) {
            Mat2Certificate c;
            c.arrangement = src.entry->name;
            c.steps = src.entry->mat2_steps;
            cert = c;
        } else {
            throw std::invalid_argument(src.entry->name + ": no built-in certificate");
        }
    } else if (cert_spec.front() == '(' || cert_spec.find('|') != std::string::npos) {
        MatCertificate c;
        c.blocks = parse_blocks_inline(cert_spec);
        cert = c;
    } else {
        cert = certificate_from_json(nlohmann::json::parse(read_file(cert_spec)));
    }

    if (std::holds_alternative<MatCertificate>(cert)) {
        auto& c = std::get<MatCertificate>(cert);
        MatVerification v = verify_mat_partition(a, c.blocks, c.arrangement);
        int code = report_mat(v);
        if (!out_path.empty() && v.ok)
            write_file(out_path, certificate_to_json(v.certificate).dump(2) + "\n");
        return code;
    }
    auto& c = std::get<Mat2Certificate>(cert);
    Mat2Verification v = verify_mat2_sequence(a, c.steps, c.arrangement);
    int code = report_mat2(v);
    if (!out_path.empty() && v.ok)
        write_file(out_path, certificate_to_json(v.certificate).dump(2) + "\n");
    return code;
}

std::vector<std::vector<int>> parse_first_blocks_file(const std::string& path) {
    std::vector<std::vector<int>> sets;
    std::istringstream in(read_file(path));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::vector<int> set;
        int value = -1;
        for (char ch : line) {
            if (ch >= '0' && ch <= '9') {
                value = (value < 0 ? 0 : value * 10) + (ch - '0');
                continue;
            }
            if (value >= 0) set.push_back(value);
            value = -1;
            if (ch != ',' && ch != ' ' && ch != '\t' && ch != '\r')
                throw ParseError(path + ":" + std::to_string(lineno) +
                                 ": unexpected character in first-block list");
        }
        if (value >= 0) set.push_back(value);
        if (!set.empty()) sets.push_back(std::move(set));
    }
    if (sets.empty()) throw ParseError(path + ": no first-block sets");
    return sets;
}

int cmd_search(const std::string& source_spec, const std::string& mode,
               std::uint64_t budget, unsigned threads, const std::string& first_blocks,
               const std::string& memo, std::uint64_t progress,
               const std::string& out_path, const std::string& expect,
               unsigned conductor_limit) {
    Source src = resolve_source(source_spec, conductor_limit);
    const Arrangement& a = need_arrangement(src);

    SearchConfig cfg;
    cfg.mode = mode == "mat2" ? SearchMode::mat2 : SearchMode::mat;
    cfg.node_budget = budget;
    cfg.worker_count = threads;
    cfg.memoize = memo != "off";
    cfg.progress_every = progress;
    if (!first_blocks.empty()) cfg.first_blocks = parse_first_blocks_file(first_blocks);

    SearchOutcome outcome =
        cfg.mode == SearchMode::mat ? search_mat(a, cfg) : search_mat2(a, cfg);

    const char* name = verdict_name(outcome.verdict);
    std::cout << "verdict: " << name;
    if (outcome.verdict == SearchVerdict::exhausted_none)
        std::cout << (outcome.restricted_first_block
                          ? " (relative to the supplied first-block restriction)"
                          : " (complete search)");
    std::cout << "\nmode: " << mode << "\nnodes: " << outcome.stats.nodes
              << "\nmemo hits: " << outcome.stats.memo_hits << "\n";
    std::fprintf(stdout, "wall ms: %.1f\n", outcome.stats.wall_ms);

    if (outcome.mat_certificate) outcome.mat_certificate->arrangement = src.spec;
    if (outcome.mat2_certificate) outcome.mat2_certificate->arrangement = src.spec;

    nlohmann::json j;
    if (outcome.mat_certificate) {
        std::cout << "blocks: " << blocks_inline(outcome.mat_certificate->blocks) << "\n";
        std::cout << "exponents: " << join(outcome.mat_certificate->exponents) << "\n";
        j = certificate_to_json(*outcome.mat_certificate);
    } else if (outcome.mat2_certificate) {
        for (const auto& st : outcome.mat2_certificate->steps) {
            std::cout << "step s=" << st.s << ":";
            for (const auto& [index, slot] : st.slotted)
                std::cout << " " << index << "@" << slot;
            std::cout << "\n";
        }
        std::cout << "exponents: " << join(outcome.mat2_certificate->exponents) << "\n";
        j = certificate_to_json(*outcome.mat2_certificate);
    } else {
        j["kind"] = mode;
        j["arrangement"] = src.spec;
    }
    j["verdict"] = name;
    j["restricted_first_block"] = outcome.restricted_first_block;
    j["stats"] = {{"nodes", outcome.stats.nodes},
                  {"memo_hits", outcome.stats.memo_hits},
                  {"wall_ms", outcome.stats.wall_ms}};
    if (!out_path.empty()) write_file(out_path, j.dump(2) + "\n");

    if (!expect.empty()) {
        if (expect != name) {
            std::cout << "expected verdict " << expect << ", got " << name << "\n";
            return kFailed;
        }
        return kOk;
    }
    return outcome.verdict == SearchVerdict::budget_exceeded ? kBudget : kOk;
}

std::vector<int> parse_exponents(const std::string& text) {
    std::vector<int> exps;
    int value = -1;
    for (char ch : text) {
        if (ch >= '0' && ch <= '9') {
            value = (value < 0 ? 0 : value * 10) + (ch - '0');
            continue;
        }
        if (value >= 0) exps.push_back(value);
        value = -1;
        if (ch != ',' && ch != ' ')
            throw ParseError(std::string("exponents: unexpected character '") + ch + "'");
    }
    if (value >= 0) exps.push_back(value);
    if (exps.empty()) throw ParseError("exponents: empty list");
    return exps;
}

int cmd_filter(const std::string& source_spec, const std::string& exponents,
               unsigned conductor_limit) {
    Source src = resolve_source(source_spec, conductor_limit);

    if (src.entry && src.entry->is_facts) {
        const FactsRecord& f = *src.entry->facts;
        if (!f.hyperplanes || !f.exponents || !f.restriction_size)
            throw std::invalid_argument(f.name +
                                        ": tabulated record lacks the numbers the filter needs");
        long long drop = *f.hyperplanes - *f.restriction_size;
        int top = f.exponents->back();
        std::cout << "|A| = " << *f.hyperplanes << ", |A^H| = " << *f.restriction_size
                  << " for every H, drop " << drop << ", top exponent " << top << "\n";
        if (necessary_filter_tabulated(f)) {
            std::cout << "pass\n";
            return kOk;
        }
        std::cout << "fail: not MAT2-free (necessary condition)\n";
        return kFailed;
    }

    const Arrangement& a = need_arrangement(src);
    if (exponents.empty())
        throw std::invalid_argument("--exponents is required for arrangements with forms");
    FilterResult r = necessary_filter(a, parse_exponents(exponents));
    if (r.status == FilterStatus::inapplicable) {
        std::cout << "inapplicable: empty arrangement\n";
        return kOk;
    }
    std::vector<long long> drops = r.drops;
    std::cout << "top exponent: " << r.top_exponent << "\ndrops:";
    for (long long d : drops) std::cout << " " << d;
    std::cout << "\n";
    if (r.status == FilterStatus::pass) {
        std::cout << "witnesses: " << join(r.witnesses) << "\npass\n";
        return kOk;
    }
    std::cout << "fail: not MAT2-free (necessary condition)\n";
    return kFailed;
}

int cmd_restrict(const std::string& source_spec, int hyperplane,
                 unsigned conductor_limit) {
    Source src = resolve_source(source_spec, conductor_limit);
    const Arrangement& a = need_arrangement(src);
    if (hyperplane < 1 || hyperplane > (int)a.size())
        throw std::invalid_argument("hyperplane index out of range (1.." +
                                    std::to_string(a.size()) + ")");
    std::vector<Subspace> rs = restriction(a, a[hyperplane - 1]);
    std::cout << "# restriction to H" << hyperplane << ": " << rs.size()
              << " subspaces, drop " << a.size() << " - " << rs.size() << " = "
              << a.size() - rs.size() << "\n";
    for (const auto& x : rs) std::cout << x.str() << "\n";
    return kOk;
}

int cmd_localize(const std::string& source_spec, const std::string& subspace,
                 unsigned conductor_limit) {
    Source src = resolve_source(source_spec, conductor_limit);
    const Arrangement& a = need_arrangement(src);
    std::vector<Covector> rows;
    std::string part;
    std::istringstream in(subspace);
    while (std::getline(in, part, '|')) {
        Arrangement one = Arrangement::parse("conductor " + std::to_string(a.conductor()) +
                                             "\ndim " + std::to_string(a.dim()) + "\n" +
                                             part + "\n");
        rows.push_back(one[0].covector());
    }
    Subspace x(a.dim(), a.conductor(), std::move(rows));
    std::cout << localization(a, x).emit();
    return kOk;
}

int cmd_product(const std::string& a_spec, const std::string& b_spec,
                const std::string& out_path, unsigned conductor_limit) {
    Source sa = resolve_source(a_spec, conductor_limit);
    Source sb = resolve_source(b_spec, conductor_limit);
    Arrangement p = product(need_arrangement(sa), need_arrangement(sb));
    if (!out_path.empty())
        write_file(out_path, p.emit());
    else
        std::cout << p.emit();
    return kOk;
}

int cmd_filtration(const std::string& cert_path, const std::string& source_spec,
                   unsigned conductor_limit) {
    Certificate cert = certificate_from_json(nlohmann::json::parse(read_file(cert_path)));
    std::string from_cert = std::visit([](const auto& c) { return c.arrangement; }, cert);
    std::string spec = !source_spec.empty() ? source_spec : from_cert;
    if (spec.empty())
        throw std::invalid_argument(
            "certificate names no arrangement; pass --source explicitly");
    // A bare catalog name inside a certificate resolves against the catalog.
    Source src;
    try {
        src = resolve_source(spec, conductor_limit);
    } catch (const ParseError&) {
        src = resolve_source("catalog:" + spec, conductor_limit);
    }
    const Arrangement& a = need_arrangement(src);
    std::vector<FiltrationEntry> chain = std::visit(
        [&](const auto& c) { return free_filtration(a, c); }, cert);
    for (const auto& e : chain) {
        std::cout << "size " << e.size;
        if (e.added_index) std::cout << ": added H" << e.added_index;
        std::cout << ", exponents " << join(e.exponents) << "\n";
    }
    return kOk;
}

int cmd_catalog_list() {
    for (const std::string& name : catalog_names()) {
        CatalogEntry e = named(name);
        std::cout << name << ": ";
        if (e.is_facts) {
            std::cout << "facts only";
        } else {
            std::cout << e.arrangement->size() << " hyperplanes, dim "
                      << e.arrangement->dim() << ", conductor "
                      << e.arrangement->conductor();
            if (!e.mat_blocks.empty()) std::cout << ", MAT partition";
            if (!e.mat2_steps.empty()) std::cout << ", MAT2 steps";
        }
        std::cout << "\n";
    }
    return kOk;
}

int cmd_catalog_show(const std::string& name, const std::string& cert_path) {
    CatalogEntry e = named(name);
    if (!cert_path.empty()) {
        if (!e.mat_blocks.empty()) {
            MatCertificate c;
            c.arrangement = e.name;
            c.blocks = e.mat_blocks;
            write_file(cert_path, certificate_to_json(c).dump(2) + "\n");
        } else if (!e.mat2_steps.empty()) {
            Mat2Certificate c;
            c.arrangement = e.name;
            c.steps = e.mat2_steps;
            write_file(cert_path, certificate_to_json(c).dump(2) + "\n");
        } else {
            throw std::invalid_argument(name + ": no built-in certificate");
        }
    }
    if (e.is_facts) {
        const FactsRecord& f = *e.facts;
        std::cout << "name: " << f.name << "\n";
        if (f.hyperplanes) std::cout << "hyperplanes: " << *f.hyperplanes << "\n";
        if (f.exponents) std::cout << "exponents: " << join(*f.exponents) << "\n";
        if (f.restriction_size)
            std::cout << "restriction size: " << *f.restriction_size << "\n";
        if (f.no_free_filtration) std::cout << "no free filtration\n";
        if (!f.note.empty()) std::cout << "note: " << f.note << "\n";
        return kOk;
    }
    std::cout << e.arrangement->emit();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact MAT / MAT2 freeness toolkit for hyperplane arrangements"};
    app.require_subcommand(1);
    unsigned conductor_limit = 120;
    app.add_option("--conductor-limit", conductor_limit,
                   "reject arrangement files with a larger cyclotomic conductor")
        ->capture_default_str();

    auto* cat = app.add_subcommand("catalog", "list built-in arrangements or show one");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "one line per built-in entry");
    auto* show = cat->add_subcommand("show", "emit an entry's arrangement file");
    std::string show_name, show_cert;
    show->add_option("name", show_name, "catalog entry name")->required();
    show->add_option("--cert", show_cert, "also write the built-in certificate (JSON) here");

    auto* ver = app.add_subcommand("verify", "check a MAT partition or MAT2 sequence");
    std::string ver_source, ver_cert, ver_out;
    bool ver_builtin = false;
    ver->add_option("source", ver_source, "arrangement file or catalog:NAME")->required();
    ver->add_option("certificate", ver_cert,
                    "certificate JSON file, or inline blocks like \"(1,2,3|4,5)\"");
    ver->add_flag("--builtin", ver_builtin, "use the catalog entry's built-in certificate");
    ver->add_option("--out", ver_out, "write the verified certificate (JSON) here");

    auto* sea = app.add_subcommand("search", "exhaustive certificate search");
    std::string sea_source, sea_mode = "mat", sea_first, sea_memo = "on", sea_out, sea_expect;
    std::uint64_t sea_budget = SearchConfig{}.node_budget, sea_progress = 0;
    unsigned sea_threads = 1;
    sea->add_option("source", sea_source, "arrangement file or catalog:NAME")->required();
    sea->add_option("--mode", sea_mode, "mat or mat2")
        ->check(CLI::IsMember({"mat", "mat2"}))
        ->capture_default_str();
    sea->add_option("--budget", sea_budget, "node budget")->capture_default_str();
    sea->add_option("--threads", sea_threads, "worker threads")->capture_default_str();
    sea->add_option("--first-blocks", sea_first,
                    "file of first-block index sets (one comma-separated set per line)");
    sea->add_option("--memo", sea_memo, "on or off")
        ->check(CLI::IsMember({"on", "off"}))
        ->capture_default_str();
    sea->add_option("--progress", sea_progress, "emit a progress line every N nodes");
    sea->add_option("--out", sea_out, "write verdict + certificate (JSON) here");
    sea->add_option("--expect", sea_expect,
                    "assert the verdict; exit 0 on match, 1 on mismatch")
        ->check(CLI::IsMember({"certified", "exhausted_none", "budget_exceeded"}));

    auto* fil = app.add_subcommand("filter", "necessary condition for MAT2-freeness");
    std::string fil_source, fil_exps;
    fil->add_option("source", fil_source, "arrangement file or catalog:NAME")->required();
    fil->add_option("--exponents", fil_exps, "claimed exponents, e.g. \"1,5,9\"");

    auto* res = app.add_subcommand("restrict", "list the restriction to one hyperplane");
    std::string res_source;
    int res_h = 0;
    res->add_option("source", res_source, "arrangement file or catalog:NAME")->required();
    res->add_option("--hyperplane", res_h, "1-based hyperplane index")->required();

    auto* loc = app.add_subcommand("localize", "hyperplanes containing a subspace");
    std::string loc_source, loc_sub;
    loc->add_option("source", loc_source, "arrangement file or catalog:NAME")->required();
    loc->add_option("--subspace", loc_sub,
                    "annihilator rows, '|'-separated covectors like \"1 ; 0 ; 0 | 0 ; 1 ; 0\"")
        ->required();

    auto* pro = app.add_subcommand("product", "product of two arrangements");
    std::string pro_a, pro_b, pro_out;
    pro->add_option("a", pro_a, "first factor")->required();
    pro->add_option("b", pro_b, "second factor")->required();
    pro->add_option("--out", pro_out, "write the product arrangement here");

    auto* flt = app.add_subcommand("filtration", "single-step free filtration of a certificate");
    std::string flt_cert, flt_source;
    flt->add_option("certificate", flt_cert, "certificate JSON file")->required();
    flt->add_option("--source", flt_source,
                    "arrangement file or catalog:NAME (default: the certificate's own field)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (cat->parsed()) {
            if (cat->get_subcommand("list")->parsed()) return cmd_catalog_list();
            return cmd_catalog_show(show_name, show_cert);
        }
        if (ver->parsed())
            return cmd_verify(ver_source, ver_cert, ver_builtin, ver_out, conductor_limit);
        if (sea->parsed())
            return cmd_search(sea_source, sea_mode, sea_budget, sea_threads, sea_first,
                              sea_memo, sea_progress, sea_out, sea_expect, conductor_limit);
        if (fil->parsed()) return cmd_filter(fil_source, fil_exps, conductor_limit);
        if (res->parsed()) return cmd_restrict(res_source, res_h, conductor_limit);
        if (loc->parsed()) return cmd_localize(loc_source, loc_sub, conductor_limit);
        if (pro->parsed()) return cmd_product(pro_a, pro_b, pro_out, conductor_limit);
        if (flt->parsed()) return cmd_filtration(flt_cert, flt_source, conductor_limit);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const nlohmann::json::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
