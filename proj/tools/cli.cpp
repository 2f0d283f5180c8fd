#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rca/blocknbh.hpp"
#include "rca/ca_format.hpp"
#include "rca/explorer.hpp"
#include "rca/linear.hpp"
#include "rca/reversibility.hpp"
#include "rca/witness.hpp"

namespace rca::cli {

namespace {

// Human lines ("N = {0,1}", "...: PASS") or stable key=value lines.
class Report {
public:
    Report(std::ostream& out, bool porcelain, bool color) : out_(out), porcelain_(porcelain), color_(color) {}

    void value(std::string_view label, std::string_view key, const std::string& v) {
        if (porcelain_)
            out_ << key << '=' << v << '\n';
        else
            out_ << label << " = " << v << '\n';
    }
    void value(std::string_view label, std::string_view key, const CellSet& s) { value(label, key, s.to_string()); }

    void check(std::string_view text, std::string_view key, bool pass) {
        failed_ = failed_ || !pass;
        if (porcelain_) {
            out_ << key << '=' << (pass ? "pass" : "fail") << '\n';
            return;
        }
        out_ << text << ": ";
        if (color_) out_ << (pass ? "\x1b[32m" : "\x1b[31m");
        out_ << (pass ? "PASS" : "FAIL");
        if (color_) out_ << "\x1b[0m";
        out_ << '\n';
    }

    void note(const std::string& text) {
        if (!porcelain_) out_ << text << '\n';
    }

    bool porcelain() const { return porcelain_; }
    bool failed() const { return failed_; }
    int code() const { return failed_ ? kVerificationFailed : kOk; }

private:
    std::ostream& out_;
    bool porcelain_;
    bool color_;
    bool failed_ = false;
};

CellSet cells_arg(const std::string& text, const char* what) {
    try {
        return CellSet::parse(text);
    } catch (const Error& e) {
        throw InvalidInput(std::string(what) + ": " + e.what());
    }
}

std::string tracks_text(const Alphabet& a) {
    std::string s;
    for (std::size_t i = 0; i < a.tracks.size(); ++i) s += (i ? "," : "") + std::to_string(a.tracks[i]);
    return s;
}

void emit_ca(const ReversibleCA& ca, const std::string& path, std::ostream& out, Report& report) {
    if (path.empty()) {
        write_ca(out, ca);
    } else {
        save_ca(path, ca);
        report.value("written", "output", path);
    }
}

void report_bounds(Report& r, const ReversibleCA& f, const Limits& limits, const std::string& prefix = {}) {
    const auto b = verify_all_bounds(f, limits);
    const std::string k = prefix.empty() ? "" : prefix + ".";
    r.value("N", k + "n", b.n);
    r.value("Ñ", k + "n_dual", b.n_dual);
    r.value("BN", k + "bn", b.bn);
    r.value("(N-N+Ñ) ∩ (Ñ-Ñ+N)", k + "individual_bound", b.individual_bound);
    r.check("N ∩ Ñ nonempty", k + "neighborhoods_meet", b.neighborhoods_meet);
    r.check("N ∪ Ñ ⊆ BN", k + "lower_bound", b.contains_neighborhoods);
    r.check("BN ⊆ (N-N+Ñ) ∩ (Ñ-Ñ+N)", k + "upper_bound", b.within_individual_bound);
    r.check("BN(dual) = BN", k + "self_dual", b.self_dual);
    if (r.porcelain())
        r.value("", k + "minimal", b.minimal ? "true" : "false");
    else
        r.note(b.minimal ? "BN = N ∪ Ñ (minimal)" : "BN ⊋ N ∪ Ñ");
}

void report_composition(Report& r, const std::vector<ReversibleCA>& fs, const Limits& limits) {
    const auto cb = composition_bound(fs, limits);
    for (std::size_t i = 0; i < cb.terms.size(); ++i) {
        const auto& t = cb.terms[i];
        const auto n = std::to_string(i + 1);
        r.value("C_" + n, "c" + n, t.c);
        r.value("K_" + n, "k" + n, t.k);
        r.value("D_" + n, "d" + n, t.d);
    }
    if (!cb.exact_neighborhoods) r.note("note: some partial composites were too large; their neighborhoods are over-approximated");
    r.value("V", "v", cb.v);
    if (cb.composite_bn) {
        r.value("BN(composite)", "composite_bn", *cb.composite_bn);
        r.check("BN(composite) ⊆ V", "composite_within_v", *cb.contained);
    } else {
        r.value("BN(composite)", "composite_bn", "skipped (too large)");
    }
}

std::vector<ReversibleCA> load_all(const std::vector<std::string>& paths, const Limits& limits) {
    std::vector<ReversibleCA> fs;
    for (const auto& p : paths) fs.push_back(load_ca(p, limits));
    for (const auto& f : fs)
        if (f.q() != fs.front().q()) throw AlphabetMismatch("all automata must share an alphabet size");
    return fs;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
    CLI::App app{"Block neighborhoods of reversible one-dimensional cellular automata"};
    app.name("blocknbh");
    app.require_subcommand(1);
    app.fallthrough();

    Limits limits;
    bool porcelain = false;
    app.add_flag("--porcelain", porcelain, "Stable key=value output");
    app.add_option("--max-evals", limits.max_evals, "Assignments enumerated by one check")->capture_default_str();
    app.add_option("--max-table", limits.max_table, "Entries in any built rule table")->capture_default_str();
    app.add_option("--max-radius", limits.max_radius, "Inverse synthesis search radius")->capture_default_str();

    std::string file, output;
    std::vector<std::string> files;

    auto* info = app.add_subcommand("info", "Alphabet, window, neighborhoods and reversibility");
    info->add_option("file", file, ".ca file")->required();

    auto* bn = app.add_subcommand("bn", "Block neighborhood and its bounds");
    bn->add_option("file", file, ".ca file")->required();

    std::string cells_text, target_text;
    std::size_t ring = 0;
    auto* decompose = app.add_subcommand("decompose", "Build and verify a block decomposition on a ring");
    decompose->add_option("file", file, ".ca file")->required();
    decompose->add_option("--cells,-x", cells_text, "Input block X")->required();
    decompose->add_option("--target,-y", target_text, "Output block Y")->required();
    decompose->add_option("--ring,-P", ring, "Ring period (default: smallest safe period)");
    decompose->add_option("-o,--output", output, "Witness file (default: stdout)");

    auto* compose_cmd = app.add_subcommand("compose", "Compose automata, first file applied first");
    compose_cmd->add_option("files", files, ".ca files")->required();
    compose_cmd->add_option("-o,--output", output, "Write the composite");

    int k = 2;
    auto* power_cmd = app.add_subcommand("power", "k-th iterate and its bounds");
    power_cmd->add_option("file", file, ".ca file")->required();
    power_cmd->add_option("-k", k, "Exponent")->capture_default_str()->check(CLI::Range(1, 64));
    power_cmd->add_option("-o,--output", output, "Write the iterate");

    auto* bounds = app.add_subcommand("check-bounds", "All bound checks for each file and their composite");
    bounds->add_option("files", files, ".ca files, first applied first")->required();

    auto* builtin = app.add_subcommand("builtin", "Write a built-in automaton");
    builtin->require_subcommand(1);
    builtin->add_option("-o,--output", output, "Output .ca file (default: stdout)");
    int stretch = 1;
    auto* b_toffoli = builtin->add_subcommand("toffoli", "Toffoli automaton");
    b_toffoli->add_option("--l", stretch, "Stretch")->capture_default_str()->check(CLI::PositiveNumber);
    Cell shift_by = 1;
    std::uint32_t q = 2;
    auto* b_shift = builtin->add_subcommand("shift", "Shift reading cell k");
    b_shift->add_option("--k", shift_by, "Offset")->capture_default_str();
    b_shift->add_option("--q", q, "Alphabet size")->capture_default_str()->check(CLI::Range(2u, 1u << 16));
    auto* b_identity = builtin->add_subcommand("identity", "Identity");
    b_identity->add_option("--q", q, "Alphabet size")->capture_default_str()->check(CLI::Range(2u, 1u << 16));
    std::string preset, terms;
    std::size_t tracks = 2;
    auto* b_linear = builtin->add_subcommand("linear", "XOR-linear automaton over binary tracks");
    auto* preset_opt = b_linear->add_option("--preset", preset, "two-track-partial-shift")
                           ->check(CLI::IsMember({"two-track-partial-shift"}));
    b_linear->add_option("--terms", terms, "e.g. \"0:10/01 1:01/00\"")->excludes(preset_opt);
    b_linear->add_option("--tracks", tracks, "Number of tracks")->capture_default_str()->check(CLI::Range(1, 8));
    builtin->fallthrough();

    auto* explore = app.add_subcommand("explore", "Surveys and constructions");
    explore->require_subcommand(1);
    std::uint32_t qmax = 2;
    std::string window_text = "{0,1}";
    std::uint64_t limit = UINT64_MAX;
    auto* e_survey = explore->add_subcommand("survey", "Record N, Ñ, BN of every reversible rule on a window");
    e_survey->add_option("--qmax", qmax, "Largest alphabet size")->capture_default_str()->check(CLI::Range(2u, 16u));
    e_survey->add_option("--window", window_text, "Rule window")->capture_default_str();
    e_survey->add_option("--limit", limit, "Automata per alphabet size");
    e_survey->add_option("-o,--output", output, "Results file (resumed when present)");
    auto* e_minimal = explore->add_subcommand("minimal", "BN = N ∪ Ñ for an additive automaton");
    e_minimal->add_option("file", file, ".ca file")->required();
    std::string x_text, y_text, z_text;
    bool all_shifts = false;
    auto* e_conj = explore->add_subcommand("conjecture", "Build an automaton with prescribed N, Ñ, BN");
    e_conj->add_option("--x", x_text, "N")->required();
    e_conj->add_option("--y", y_text, "Ñ")->required();
    e_conj->add_option("--z", z_text, "BN")->required();
    e_conj->add_flag("--all-shifts", all_shifts, "Add a shift summand for every cell of X");
    e_conj->add_option("-o,--output", output, "Write the automaton");

    std::string witness_path;
    auto* verify = app.add_subcommand("verify-witness", "Check a witness file against an automaton");
    verify->add_option("file", file, ".ca file")->required();
    verify->add_option("witness", witness_path, "Witness file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Report r(out, porcelain, color);
    try {
        if (info->parsed()) {
            const auto ca = read_ca_file(file);
            r.value("alphabet", "alphabet", std::to_string(ca.alphabet.size));
            if (!ca.alphabet.tracks.empty()) r.value("tracks", "tracks", tracks_text(ca.alphabet));
            r.value("window", "window", ca.forward.offsets());
            if (!ca.inverse) {
                const auto verdict = is_injective(ca.forward, ca.alphabet, limits);
                if (!verdict.injective) {
                    r.value("N", "n", minimal_neighborhood(ca.forward, ca.alphabet));
                    r.value("reversible", "reversible", "no");
                    r.note("not reversible: " + describe_witness(*verdict.witness));
                    if (porcelain) r.value("", "witness", describe_witness(*verdict.witness));
                    return kOk;
                }
            }
            const auto f = to_reversible(ca, limits);
            r.value("reversible", "reversible", ca.inverse ? "yes (stored inverse verified)" : "yes (inverse synthesized)");
            r.value("N", "n", f.neighborhood());
            r.value("Ñ", "n_dual", f.dual_neighborhood());
            r.value("inverse window", "inverse_window", f.inverse().offsets());
            return kOk;
        }

        if (bn->parsed()) {
            report_bounds(r, load_ca(file, limits), limits);
            return r.code();
        }

        if (decompose->parsed()) {
            const auto f = load_ca(file, limits);
            const auto x = cells_arg(cells_text, "--cells");
            const auto y = cells_arg(target_text, "--target");
            const std::size_t period = ring ? ring : default_ring_period(f, x);
            const auto w = semilocalize(f, x, y, period, limits);
            const auto check = verify_witness(f, w, limits);
            Report s(output.empty() ? err : out, porcelain, color);
            if (output.empty()) {
                write_witness(out, w);
            } else {
                std::ofstream wf(output);
                if (!wf) throw InvalidInput("cannot write '" + output + "'");
                write_witness(wf, w);
            }
            s.value("ring", "ring", std::to_string(period));
            s.value("X", "x", x);
            s.value("Y", "y", y);
            s.value("classes", "classes", std::to_string(w.e_size));
            if (porcelain) {
                s.value("", "configurations", std::to_string(check.configurations));
                s.check("", "reconstruction", check.ok);
            } else {
                s.note(check.ok ? "reconstruction OK over " + std::to_string(check.configurations) + " configurations"
                                : "reconstruction FAILED: " + check.detail);
            }
            if (!output.empty()) s.value("witness", "witness", output);
            return check.ok ? kOk : kVerificationFailed;
        }

        if (compose_cmd->parsed()) {
            const auto fs = load_all(files, limits);
            ReversibleCA c = fs.front();
            for (std::size_t i = 1; i < fs.size(); ++i) c = compose(fs[i], c, limits);
            r.value("factors", "factors", std::to_string(fs.size()));
            r.value("N(composite)", "composite_n", c.neighborhood());
            r.value("Ñ(composite)", "composite_n_dual", c.dual_neighborhood());
            report_composition(r, fs, limits);
            if (!output.empty()) emit_ca(c, output, out, r);
            return r.code();
        }

        if (power_cmd->parsed()) {
            const auto f = load_ca(file, limits);
            const std::vector<ReversibleCA> fs(static_cast<std::size_t>(k), f);
            r.value("k", "k", std::to_string(k));
            report_composition(r, fs, limits);
            const auto ib = iterate_bound(f, k);
            r.value("iterate bound", "iterate_bound", ib);
            const auto cb = composition_bound(fs, limits);
            if (cb.composite_bn) r.check("BN(f^k) ⊆ iterate bound", "iterate_within_bound", cb.composite_bn->subset_of(ib));
            if (!output.empty()) emit_ca(power(f, k, limits), output, out, r);
            return r.code();
        }

        if (bounds->parsed()) {
            const auto fs = load_all(files, limits);
            for (std::size_t i = 0; i < fs.size(); ++i) {
                if (fs.size() > 1) r.note("[f_" + std::to_string(i + 1) + "] " + files[i]);
                report_bounds(r, fs[i], limits, fs.size() > 1 ? "f" + std::to_string(i + 1) : std::string{});
            }
            if (fs.size() > 1) r.note("[composite]");
            report_composition(r, fs, limits);
            if (fs.size() == 1) r.check("V = BN", "v_equals_bn", composition_bound(fs, limits).v == block_neighborhood(fs[0], limits));
            if (fs.size() == 2) {
                const auto box = indecomposability_bound(fs[0], fs[1]);
                const auto cb = composition_bound(fs, limits);
                r.value("[-4r;4r]", "radius_bound", box);
                if (cb.composite_bn) r.check("BN(composite) ⊆ [-4r;4r]", "composite_within_radius_bound", cb.composite_bn->subset_of(box));
            }
            return r.code();
        }

        if (builtin->parsed()) {
            std::optional<ReversibleCA> ca;
            if (b_toffoli->parsed()) ca = toffoli(stretch);
            if (b_shift->parsed()) ca = shift(shift_by, Alphabet::make(q));
            if (b_identity->parsed()) ca = identity(Alphabet::make(q));
            if (b_linear->parsed()) {
                if (preset.empty() && terms.empty()) throw InvalidInput("linear needs --preset or --terms");
                ca = preset.empty() ? linear_ca(tracks, parse_linear_terms(terms), limits)
                                    : linear_ca(2, two_track_partial_shift(), limits);
            }
            emit_ca(*ca, output, out, r);
            return kOk;
        }

        if (explore->parsed()) {
            if (e_survey->parsed()) {
                const auto window = cells_arg(window_text, "--window");
                const auto records = survey(qmax, window, limit, output, limits);
                if (output.empty()) {
                    out << "survey-format 1\nwindow " << window.to_string() << '\n';
                    std::uint32_t current = 0;
                    for (const auto& rec : records) {
                        if (rec.q != current) out << "q " << (current = rec.q) << '\n';
                        out << rec.table_index << ' ' << rec.n.to_string() << ' ' << rec.n_dual.to_string() << ' '
                            << rec.bn.to_string() << '\n';
                    }
                } else {
                    r.value("records", "records", std::to_string(records.size()));
                    r.check("sandwich and self-duality on every record", "survey", true);
                    r.value("written", "output", output);
                }
                return kOk;
            }
            if (e_minimal->parsed()) {
                const auto f = load_ca(file, limits);
                const bool minimal = check_subtraction_minimal(f, limits);
                r.value("N ∪ Ñ", "union", f.neighborhood() | f.dual_neighborhood());
                r.value("BN", "bn", block_neighborhood(f, limits));
                r.check("BN = N ∪ Ñ", "minimal", minimal);
                return r.code();
            }
            if (e_conj->parsed()) {
                const auto inst = build_conjecture_instance(cells_arg(x_text, "--x"), cells_arg(y_text, "--y"),
                                                            cells_arg(z_text, "--z"), all_shifts, limits);
                for (std::size_t i = 0; i < inst.components.size(); ++i)
                    r.value("component " + std::to_string(i + 1), "component" + std::to_string(i + 1), inst.components[i]);
                r.value("alphabet", "alphabet", std::to_string(inst.ca.q()));
                r.value("N", "n", inst.n);
                r.value("Ñ", "n_dual", inst.n_dual);
                r.value("BN", "bn", inst.bn);
                r.check("triple verified", "verified", true);
                if (!output.empty()) emit_ca(inst.ca, output, out, r);
                return kOk;
            }
        }

        if (verify->parsed()) {
            const auto f = load_ca(file, limits);
            std::ifstream in(witness_path);
            if (!in) throw InvalidInput("cannot open '" + witness_path + "'");
            const auto w = parse_witness(in);
            const auto check = verify_witness(f, w, limits);
            r.value("classes", "classes", std::to_string(w.e_size));
            if (porcelain) {
                r.value("", "configurations", std::to_string(check.configurations));
                r.check("", "reconstruction", check.ok);
            } else {
                r.note(check.ok ? "reconstruction OK over " + std::to_string(check.configurations) + " configurations"
                                : "reconstruction FAILED: " + check.detail);
            }
            return check.ok ? kOk : kVerificationFailed;
        }
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const TooLarge& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const RadiusCapExceeded& e) {
        err << "resource cap: " << e.what() << '\n';
        return kResourceCap;
    } catch (const PreconditionFailed& e) {
        err << "precondition failed: " << e.what() << '\n';
        return kUsage;
    } catch (const NotReversible& e) {
        err << "not reversible: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    err << "error: no command\n";
    return kUsage;
}

}  // namespace rca::cli
