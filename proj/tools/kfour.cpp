// kfour: exact relative homological algebra for the Klein four-group over
// GF(2^e). Subcommands compute cohomology tables, Heller shifts, module
// decompositions, covers, resolutions and the cup-product checks.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kfour/json_io.hpp"
#include "kfour/verify.hpp"

using namespace kfour;

namespace {

uint32_t default_seed() {
    if (const char* env = std::getenv("KFOUR_SEED")) {
        try {
            return static_cast<uint32_t>(std::stoul(env, nullptr, 0));
        } catch (...) {
            throw CLI::ValidationError("KFOUR_SEED", "not an integer: " + std::string(env));
        }
    }
    return kDecompSeed;
}

struct Common {
    unsigned field_degree = 1;
    std::string chi_text = "H1,H2,H3";
    uint32_t seed = kDecompSeed;

    Field field() const { return Field::gf(field_degree); }
    ChiSet chi() const { return ChiSet::parse(chi_text); }
};

void add_common(CLI::App* cmd, Common& c, bool with_chi = true) {
    cmd->add_option("--field", c.field_degree, "field degree e for GF(2^e)")
        ->check(CLI::Range(1u, 8u))
        ->capture_default_str();
    if (with_chi)
        cmd->add_option("--chi", c.chi_text, "subgroups: subset of H1,H2,H3,triv")
            ->capture_default_str();
    cmd->add_option("--seed", c.seed, "decomposition seed (KFOUR_SEED overrides the default)")
        ->capture_default_str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact relative homological algebra for the Klein four-group over GF(2^e)"};
    app.require_subcommand(1);

    Common c;
    c.seed = kDecompSeed;

    // ---- cohom-table ----
    auto* tbl = app.add_subcommand("cohom-table", "cohomology dimension table, both methods");
    Common tbl_c;
    std::string tbl_modules;
    unsigned tbl_max_i = 6;
    std::string tbl_format = "csv", tbl_out;
    tbl->add_option("--modules", tbl_modules,
                    "comma-separated module labels (default: the table catalogue)");
    tbl->add_option("--max-i", tbl_max_i, "maximum cohomological degree")->capture_default_str();
    tbl->add_option("--format", tbl_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    tbl->add_option("--out", tbl_out, "output file (default: stdout)");
    add_common(tbl, tbl_c);

    // ---- omega ----
    auto* om = app.add_subcommand("omega", "relative Heller shift of a module");
    Common om_c;
    std::string om_module;
    int om_power = 1;
    om->add_option("--module", om_module, "module label or JSON file")->required();
    om->add_option("--power", om_power, "shift exponent i (any integer)")->capture_default_str();
    add_common(om, om_c);

    // ---- decompose ----
    auto* dc = app.add_subcommand("decompose", "Krull-Schmidt decomposition");
    Common dc_c;
    std::string dc_module, dc_out;
    dc->add_option("--module", dc_module, "module label or JSON file")->required();
    dc->add_option("--out", dc_out, "output file (default: stdout)");
    add_common(dc, dc_c, false);

    // ---- identify ----
    auto* id = app.add_subcommand("identify", "catalogue label of an indecomposable module");
    Common id_c;
    std::string id_module;
    id->add_option("--module", id_module, "module label or JSON file")->required();
    add_common(id, id_c, false);

    // ---- cover ----
    auto* cv = app.add_subcommand("cover", "relative projective cover");
    Common cv_c;
    std::string cv_module;
    bool cv_standard = false;
    cv->add_option("--module", cv_module, "module label or JSON file")->required();
    cv->add_flag("--standard", cv_standard, "standard (non-minimized) cover");
    add_common(cv, cv_c);

    // ---- resolve ----
    auto* rs = app.add_subcommand("resolve", "minimal relative resolution of the trivial module");
    Common rs_c;
    unsigned rs_length = 4;
    std::string rs_out;
    rs->add_option("--length", rs_length, "resolution length L")->capture_default_str();
    rs->add_option("--out", rs_out, "output directory for manifest + matrices")->required();
    add_common(rs, rs_c);

    // ---- cup-verify ----
    auto* cp = app.add_subcommand("cup-verify", "cup product vanishing report");
    Common cp_c;
    unsigned cp_maxdeg = 6;
    std::string cp_out;
    cp->add_option("--max-degree", cp_maxdeg, "maximum total degree i+j")->capture_default_str();
    cp->add_option("--out", cp_out, "output file (default: stdout)");
    add_common(cp, cp_c);

    // ---- verify-all ----
    auto* va = app.add_subcommand("verify-all", "run the full verification suite");
    Common va_c;
    unsigned va_maxdim = 13, va_maxi = 6;
    va->add_option("--max-dim", va_maxdim, "catalogue dimension bound")->capture_default_str();
    va->add_option("--max-i", va_maxi, "table degree bound")->capture_default_str();
    add_common(va, va_c, false);

    try {
        app.parse(argc, argv);
        const uint32_t env_seed = default_seed();
        for (Common* cc : {&tbl_c, &om_c, &dc_c, &id_c, &cv_c, &rs_c, &cp_c, &va_c})
            if (cc->seed == kDecompSeed) cc->seed = env_seed;

        if (tbl->parsed()) {
            const Field f = tbl_c.field();
            const ChiSet chi = tbl_c.chi();
            CohomTable table;
            std::vector<IndecLabel> labels;
            if (tbl_modules.empty()) {
                for (const IndecLabel& l : table_catalogue(f, 4)) labels.push_back(l);
            } else {
                for (const std::string& s : split_module_list(tbl_modules))
                    labels.push_back(IndecLabel::parse(s, f));
            }
            const bool with_closed = chi == ChiSet::maximal();
            SyzygyStore store(f, chi, tbl_c.seed);
            for (const IndecLabel& l : labels) {
                KGModule m = build_indecomposable(l, f);
                for (unsigned i = 0; i <= tbl_max_i; ++i) {
                    const size_t via_res = rel_cohom_dim(m, chi, i, &store);
                    table.rows.push_back({l.to_string(), i, via_res, "resolution"});
                    if (with_closed) {
                        const size_t via_form = closed_form_dim(l, i);
                        table.rows.push_back({l.to_string(), i, via_form, "closed_form"});
                        if (via_res != via_form)
                            table.mismatches.push_back(l.to_string() + " degree " + std::to_string(i));
                    }
                }
            }
            emit(tbl_format == "csv" ? cohom_table_to_csv(table) : cohom_table_to_json(table).dump(1) + "\n",
                 tbl_out);
            if (!table.all_match()) {
                std::cerr << "mismatches: " << table.mismatches.size() << "\n";
                return 1;
            }
            return 0;
        }

        if (om->parsed()) {
            const Field f = om_c.field();
            KGModule m = module_io(om_module, f);
            KGModule shifted = omega_chi(m, om_c.chi(), om_power, om_c.seed);
            std::cout << decomposition_to_string(decompose(shifted, om_c.seed).parts) << "\n";
            return 0;
        }

        if (dc->parsed()) {
            const Field f = dc_c.field();
            Decomposition dec = decompose(module_io(dc_module, f), dc_c.seed);
            emit(decomposition_to_json(dec).dump(1) + "\n", dc_out);
            return 0;
        }

        if (id->parsed()) {
            const Field f = id_c.field();
            KGModule m = module_io(id_module, f);
            Decomposition dec = decompose(m, id_c.seed);
            if (dec.parts.size() != 1 || dec.parts.begin()->second != 1) {
                std::cerr << "module is decomposable: " << decomposition_to_string(dec.parts) << "\n";
                return 1;
            }
            std::cout << dec.parts.begin()->first.to_string() << "\n";
            return 0;
        }

        if (cv->parsed()) {
            const Field f = cv_c.field();
            KGModule m = module_io(cv_module, f);
            CoverData cover = cv_standard ? standard_cover(m, cv_c.chi())
                                          : minimal_cover(m, cv_c.chi(), cv_c.seed);
            json out{{"total", decomposition_to_json(decompose(cover.total, cv_c.seed))},
                     {"total_dim", cover.total.dim()},
                     {"kernel", decomposition_to_json(decompose(cover.kernel, cv_c.seed))},
                     {"kernel_dim", cover.kernel.dim()}};
            std::cout << out.dump(1) << "\n";
            return 0;
        }

        if (rs->parsed()) {
            const Field f = rs_c.field();
            ResolutionData res = minimal_resolution(f, rs_c.chi(), rs_length, rs_c.seed);
            write_resolution(rs_out, res);
            std::cout << "wrote resolution of length " << rs_length << " to " << rs_out << "; Q dims:";
            for (const CoverData& cd : res.covers) std::cout << " " << cd.total.dim();
            std::cout << "\n";
            return 0;
        }

        if (cp->parsed()) {
            const Field f = cp_c.field();
            CupReport r = verify_cup_vanishing(f, cp_c.chi(), cp_maxdeg, cp_c.seed);
            emit(cup_report_to_json(r).dump(1) + "\n", cp_out);
            const bool pass =
                r.all_zero_class && (cp_c.chi() != ChiSet::maximal() || r.all_zero_map);
            return pass ? 0 : 1;
        }

        if (va->parsed()) {
            bool all = true;
            int idx = 0;
            for (const CriterionResult& r : run_acceptance(va_maxdim, va_maxi, va_c.seed)) {
                std::cout << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << ++idx << ": " << r.name
                          << " — " << r.detail << "\n";
                all &= r.pass;
            }
            return all ? 0 : 1;
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage errors exit 2; --help exits 0
    } catch (const ModuleFormatError& e) {
        std::cerr << "module format error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
