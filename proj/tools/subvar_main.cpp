#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subvar/counting.hpp"
#include "subvar/json_io.hpp"
#include "subvar/version.hpp"

namespace {

using nlohmann::json;
using namespace subvar;

long long jint(const Int& x) {
    if (!x.fits_slong_p()) throw invariant_error("output: integer exceeds 64 bits");
    return x.get_si();
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

std::vector<Int> sample_grid(const Int& t_max, const Int& step) {
    std::vector<Int> ts;
    for (Int t = step; t <= t_max; t += step) ts.push_back(t);
    if (ts.empty() || ts.back() != t_max) ts.push_back(t_max);
    return ts;
}

std::string render_enumeration(const VarietyConfig& v, const std::vector<Subvariety>& list,
                               const Int& t, const std::string& format) {
    std::ostringstream out;
    if (format == "csv") {
        out << "dim,chi,basis,provenance\n";
        for (const auto& s : list)
            out << s.dim << "," << s.chi << "," << csv_quote(s.lattice.basis.str()) << ","
                << csv_quote(s.provenance) << "\n";
        return out.str();
    }
    json records = json::array();
    for (const auto& s : list) {
        json basis = json::array();
        for (std::size_t i = 0; i < s.lattice.basis.rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < s.lattice.basis.cols(); ++j)
                row.push_back(jint(s.lattice.basis.at(i, j)));
            basis.push_back(row);
        }
        records.push_back({{"dim", s.dim},
                           {"chi", jint(s.chi)},
                           {"basis", basis},
                           {"provenance", s.provenance}});
    }
    const json doc = {{"config_digest", config_digest(v)},
                      {"max_chi", jint(t)},
                      {"count", list.size()},
                      {"records", records}};
    out << doc.dump(2) << "\n";
    return out.str();
}

std::string render_count_table(const CountTable& table, std::size_t copies) {
    std::ostringstream out;
    out << "t,N";
    for (std::size_t d = 0; d <= copies; ++d) out << ",N_dim" << d;
    out << "\n";
    for (const auto& s : table.samples) {
        out << s.t << "," << s.n;
        for (const auto& c : s.by_dim) out << "," << c;
        out << "\n";
    }
    return out.str();
}

std::string render_fit(const BoundReport& report, const std::string& digest) {
    const json doc = {{"config_digest", digest},
                      {"exponent_bound", jint(report.exponent_bound)},
                      {"per_block_sum_bound", jint(report.per_block_sum_bound)},
                      {"fitted_slope", report.fitted_slope},
                      {"margin", report.margin},
                      {"conclusive", report.conclusive},
                      {"pass", report.pass},
                      {"samples_used", report.samples_used}};
    return doc.dump(2) + "\n";
}

int run_verify(const VarietyConfig& v, const Int& t, int threads, std::ostream& out) {
    std::vector<std::string> failures;
    const auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        if (ok) {
            out << "ok " << name << "\n";
        } else {
            out << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << "\n";
            failures.push_back(name);
        }
    };

    const auto all = enumerate_all(v, t, threads);

    bool chi_ok = true, stable_ok = true, saturated_ok = true, dup_ok = true;
    std::set<std::string> seen;
    for (const auto& s : all) {
        if (chi_restricted(v.riemann_form(), s.lattice) != s.chi) chi_ok = false;
        if (!is_stable(v, s.lattice)) stable_ok = false;
        if (saturate(s.lattice).basis != s.lattice.basis) saturated_ok = false;
        if (!seen.insert(s.lattice.basis.str()).second) dup_ok = false;
    }
    check("chi recomputation", chi_ok);
    check("stability", stable_ok);
    check("saturation", saturated_ok);
    check("duplicate freedom", dup_ok);

    std::vector<std::vector<Subvariety>> per_block;
    for (const auto& b : v.blocks()) per_block.push_back(enumerate_block(b, t, threads));
    check("product bijectivity",
          count_products(per_block, t) == Int(static_cast<long>(all.size())));

    bool comp_ok = true;
    std::string comp_detail;
    for (const auto& s : all) {
        const auto c = complement(v, s);
        const Int deg = sum_isogeny_degree(v, s, c);
        const auto back = complement(v, c);
        if (deg * v.chi_total() != s.chi * c.chi || deg > s.chi * s.chi ||
            c.chi > v.chi_total() * s.chi || back.lattice.basis != s.lattice.basis) {
            comp_ok = false;
            comp_detail = "at " + s.lattice.basis.str();
            break;
        }
    }
    check("complement identities", comp_ok, comp_detail);

    const auto perm = check_permutation_invariance(v, t, threads);
    if (perm.applicable)
        check("permutation invariance", perm.pass, perm.detail);
    else
        out << "ok permutation invariance (not applicable)\n";

    for (const int d : {4, 16}) {
        const LatticeBasis m =
            v.copies() >= 2 ? doubled_copy_sublattice(v, d == 4 ? 1 : 2)
                            : scaled_sublattice(v, d == 4 ? 2 : 4);
        const auto iso = check_isogeny_inequalities(v, m, t, threads);
        if (iso.index != d) throw invariant_error("verify: sublattice index mismatch");
        check("isogeny inequalities d=" + std::to_string(d), iso.pass, iso.detail);
    }

    if (failures.empty()) {
        out << "verify: all checks passed\n";
        return 0;
    }
    out << "verify: " << failures.size() << " check(s) failed\n";
    return 3;
}

std::string render_ellipsoid(const VarietyConfig& v, std::size_t copy, const Int& t_max,
                             const Int& step) {
    std::size_t block = 0;
    while (block + 1 < v.q() && v.copy_offset(block + 1) <= copy) ++block;
    const auto& b = v.blocks()[block];
    const GramForm form = degree_form(b.ring, b.degrees);

    std::vector<Int> ts = step > 0 ? sample_grid(t_max, step) : std::vector<Int>{t_max};
    std::ostringstream out;
    out << "t,phi,volume,ratio\n";
    for (const Int& t : ts) {
        const Int phi = phi_count(form, Rat(t));
        const double vol = ellipsoid_volume_estimate(form, t.get_d());
        const double ratio = vol > 0 ? phi.get_d() / vol : 0.0;
        out << t << "," << phi << "," << vol << "," << ratio << "\n";
    }
    return out.str();
}

void write_manifest(const std::string& path, const std::string& command, const json& parameters,
                    const std::string& digest, double elapsed, const std::string& output) {
    const json doc = {{"command", command},
                      {"config_digest", digest},
                      {"parameters", parameters},
                      {"tool_version", kVersion},
                      {"elapsed_seconds", elapsed},
                      {"result_digests", {{"stdout", fnv1a64_hex(output)}}}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write manifest: " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact enumeration of abelian subvarieties of products of elliptic curves"};
    app.require_subcommand(1);

    int threads = 1;
    std::string manifest_path;
    app.add_option("--threads", threads, "internal parallelism cap")->check(CLI::PositiveNumber);
    app.add_option("--manifest", manifest_path, "write a run manifest to this path");

    std::string config_path, format = "json";
    long max_chi = 10, step = 0, max_t = 100;
    std::size_t copy = 0;
    bool exclude_trivial = false;

    auto* cmd_enum = app.add_subcommand("enumerate", "list subvarieties with chi <= bound");
    auto* cmd_count = app.add_subcommand("count", "tabulate N(t) on a grid");
    auto* cmd_fit = app.add_subcommand("fit", "compare the growth of N to the exponent bound");
    auto* cmd_verify = app.add_subcommand("verify", "run every invariant suite");
    auto* cmd_ell = app.add_subcommand("ellipsoid", "tabulate the lattice-point count Phi");
    for (auto* c : {cmd_enum, cmd_count, cmd_fit, cmd_verify, cmd_ell}) {
        c->fallthrough();
        c->add_option("config", config_path, "variety config JSON")->required();
    }
    for (auto* c : {cmd_enum, cmd_count, cmd_fit, cmd_verify})
        c->add_option("--max-chi", max_chi, "chi bound")->check(CLI::PositiveNumber);
    cmd_enum->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd_enum->add_flag("--exclude-trivial", exclude_trivial,
                       "drop the zero subvariety and the full variety");
    cmd_count->add_option("--step", step, "sample spacing")->check(CLI::PositiveNumber);
    cmd_ell->add_option("--copy", copy, "copy whose block degree form is scanned");
    cmd_ell->add_option("--max-t", max_t, "radius bound")->check(CLI::PositiveNumber);
    cmd_ell->add_option("--step", step, "emit one row per grid point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const auto started = std::chrono::steady_clock::now();
    try {
        const VarietyConfig v = load_config_file(config_path);
        const std::string digest = config_digest(v);
        const Int t(max_chi);

        std::string command, output;
        json parameters;
        int code = 0;

        if (*cmd_enum) {
            command = "enumerate";
            auto list = enumerate_all(v, t, threads);
            if (exclude_trivial)
                std::erase_if(list, [&](const Subvariety& s) {
                    return s.dim == 0 || s.dim == v.copies();
                });
            output = render_enumeration(v, list, t, format);
            parameters = {{"max_chi", max_chi},
                          {"format", format},
                          {"exclude_trivial", exclude_trivial}};
        } else if (*cmd_count) {
            command = "count";
            const Int s = step > 0 ? Int(step) : Int(1);
            const auto table = counting_function(v, sample_grid(t, s), threads, digest);
            output = render_count_table(table, v.copies());
            parameters = {{"max_chi", max_chi}, {"step", jint(s)}};
        } else if (*cmd_fit) {
            command = "fit";
            Int s = t / 40;
            if (s < 1) s = 1;
            const auto table = counting_function(v, sample_grid(t, s), threads, digest);
            const auto report = fit_exponent(table, v);
            output = render_fit(report, digest);
            parameters = {{"max_chi", max_chi}};
            code = report.conclusive ? (report.pass ? 0 : 3) : 4;
        } else if (*cmd_verify) {
            command = "verify";
            std::ostringstream buf;
            code = run_verify(v, t, threads, buf);
            output = buf.str();
            parameters = {{"max_chi", max_chi}};
        } else {
            command = "ellipsoid";
            if (copy >= v.copies()) throw input_error("--copy: no such copy");
            output = render_ellipsoid(v, copy, Int(max_t), Int(step));
            parameters = {{"copy", copy}, {"max_t", max_t}, {"step", step}};
        }

        std::cout << output;
        if (!manifest_path.empty()) {
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();
            write_manifest(manifest_path, command, parameters, digest, elapsed, output);
        }
        return code;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const structural_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    }
}
