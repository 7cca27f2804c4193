// Command-line front end. Exit codes: 0 pass, 1 mathematical failure (with a
// witness on stdout), 2 input error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <random>

#include "hopfbraid/io.hpp"

namespace fs = std::filesystem;
using namespace hopfbraid;
using io::InputError;
using io::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

void flush_warnings(const io::Diagnostics& diag) {
    for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

int report_result(const AxiomReport& rep, const std::string& what) {
    std::cout << what << "\n" << rep.summary();
    std::cout << (rep.ok() ? "PASS" : "FAIL") << "\n";
    return rep.ok() ? kPass : kFail;
}

// Path of `target` as seen from the directory of `out`.
std::string relative_to_output(const fs::path& target, const fs::path& out) {
    fs::path dir = fs::absolute(out).parent_path();
    return fs::relative(fs::absolute(target), dir).generic_string();
}

// The bialgebra reference of a module or R-matrix file, re-rooted for `out`.
io::BaseReference carry_reference(const fs::path& src, const fs::path& out) {
    json j = io::read_json(src);
    auto it = j.find("bialgebra");
    if (it != j.end() && it->is_string()) return {relative_to_output(src.parent_path() / it->get<std::string>(), out)};
    return {};
}

MonoidTable named_group(const std::string& name) {
    if (name == "S3") return symmetric_group_s3();
    if (name == "D4") return dihedral_group_d4();
    if (name.size() > 1 && name[0] == 'Z') {
        try {
            std::size_t used = 0;
            const unsigned long n = std::stoul(name.substr(1), &used);
            if (used == name.size() - 1 && n >= 1) return cyclic_group(n);
        } catch (const std::exception&) {
        }
    }
    throw InputError("--group: expected Zn, S3, D4 or 'table FILE', got '" + name + "'");
}

bool is_group(const MonoidTable& t) {
    try {
        validate_group(t);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

struct Options {
    // gen
    std::vector<std::string> group;
    std::string field = "Q";
    std::string hopf, out;
    // check
    std::string level;
    std::vector<std::string> files;
    // dual, rmatrix
    std::string file, module, r;
    // build
    std::vector<std::string> mods;
    std::string variant = "yd";
    // verify morphism
    std::string from, to, maps;
    // glue
    std::string system;
    std::size_t lo = 0, hi = 0;
    // harness
    std::size_t dim = 2, trials = 100;
    std::uint64_t seed = 1;
    // homology
    std::string coeff;
    int line = 1;
    std::size_t max_degree = 3;
    bool cohomology = false;
    std::string differential = "total";
};

int gen_group_algebra(const Options& o) {
    const Field f = io::field_from_flag(o.field);
    MonoidTable t;
    if (o.group.size() == 2 && o.group[0] == "table") {
        t = io::monoid_from_json(io::read_json(o.group[1]), o.group[1]);
    } else if (o.group.size() == 1) {
        t = named_group(o.group[0]);
    } else {
        throw InputError("--group: expected Zn, S3, D4 or 'table FILE'");
    }
    const Bialgebra b = is_group(t) ? group_algebra(f, t) : monoid_algebra(f, t);
    io::write_json(o.out, io::bialgebra_to_json(b));
    return kPass;
}

int gen_module(const Options& o, bool regular) {
    io::Diagnostics diag;
    BialgebraRef h = io::load_bialgebra(o.hopf, diag);
    flush_warnings(diag);
    const YDModule m = regular ? regular_yd(h) : unit_yd(h);
    io::write_json(o.out, io::module_to_json(m, {relative_to_output(o.hopf, o.out)}));
    return kPass;
}

int check(const std::string& kind, const Options& o) {
    if (o.files.empty()) throw InputError("check " + kind + ": no input files");
    int code = kPass;
    for (const auto& file : o.files) {
        io::Diagnostics diag;
        AxiomReport rep;
        if (kind == "bialgebra" || kind == "hopf") {
            const Bialgebra b = *io::load_bialgebra(file, diag);
            rep = check_bialgebra(b, kind == "hopf" ? BialgebraLevel::Hopf : BialgebraLevel::Bialgebra);
        } else if (kind == "yd") {
            rep = check_yd(io::load_module(file, diag).yd(), YDLevel::YD);
        } else if (kind == "yd-algebra") {
            rep = check_yd(io::load_module(file, diag).yd_algebra(), YDLevel::YDAlgebra);
        } else {
            RLevel level = RLevel::Weak;
            if (o.level == "strong")
                level = RLevel::Strong;
            else if (o.level == "quantum")
                level = RLevel::QuantumYBE;
            else if (o.level != "weak")
                throw InputError("--level: expected weak, strong or quantum");
            rep = check_r(io::load_rmatrix(file, diag), level);
        }
        flush_warnings(diag);
        if (report_result(rep, "check " + kind + " " + file) != kPass) code = kFail;
    }
    return code;
}

int dual(const std::string& kind, const Options& o) {
    io::Diagnostics diag;
    if (kind == "bialgebra") {
        const Bialgebra b = *io::load_bialgebra(o.file, diag);
        flush_warnings(diag);
        io::write_json(o.out, io::bialgebra_to_json(dual_bialgebra(b)));
    } else {
        const YDModule m = io::load_module(o.file, diag).yd();
        flush_warnings(diag);
        io::write_json(o.out, io::module_to_json(dual_yd(m), {}));
    }
    return kPass;
}

int rmatrix_coaction(const Options& o) {
    io::Diagnostics diag;
    const io::ModuleFile mf = io::load_module(o.module, diag);
    RMatrix r = io::load_rmatrix(o.r, diag);
    flush_warnings(diag);
    r.base = io::require_same_base(mf.base, r.base, o.r);
    const AxiomReport module_ok = check_module(mf.module());
    if (!module_ok.ok()) return report_result(module_ok, "input module " + o.module);
    const YDModule m = yd_from_r(mf.module(), r);
    io::write_json(o.out, io::module_to_json(m, carry_reference(o.module, o.out)));
    return report_result(check_yd(m, YDLevel::YD), "check yd (coaction from R)");
}

int rmatrix_inverse(const Options& o) {
    io::Diagnostics diag;
    const RMatrix r = io::load_rmatrix(o.r, diag);
    flush_warnings(diag);
    if (!r.base->antipode) {
        std::cout << "no antipode stored for the bialgebra; cannot form (s (x) id) R\nFAIL\n";
        return kFail;
    }
    const RMatrix inv = antipode_inverse_r(r);
    io::write_json(o.out, io::rmatrix_to_json(inv, carry_reference(o.r, o.out)));
    std::cout << "inverse written to " << o.out << "\nPASS\n";
    return kPass;
}

int build_system(const Options& o) {
    io::Diagnostics diag;
    BialgebraRef h = io::load_bialgebra(o.hopf, diag);
    std::vector<io::ModuleFile> files;
    for (const auto& path : o.mods) {
        files.push_back(io::load_module(path, diag));
        files.back().base = io::require_same_base(h, files.back().base, path);
    }
    flush_warnings(diag);
    BraidedSystem s = [&] {
        if (o.variant == "yd") {
            std::vector<YDModule> mods;
            for (const auto& f : files) mods.push_back(f.yd());
            return build_yd_system(h, mods);
        }
        if (o.variant != "ydalg") throw InputError("--variant: expected ydalg or yd");
        std::vector<YDModuleAlgebra> mods;
        for (const auto& f : files) mods.push_back(f.yd_algebra());
        return build_yd_system(h, mods, SystemVariant::YDAlg);
    }();
    io::write_json(o.out, io::system_to_json(s));
    std::cout << "system of rank " << s.rank() << ", " << cybe_instance_count(s.rank())
              << " cYBE instances verified\nPASS\n";
    return kPass;
}

int verify_cybe_cmd(const Options& o) {
    io::Diagnostics diag;
    const BraidedSystem s = io::load_system(o.file, diag);
    flush_warnings(diag);
    return report_result(verify_cybe(s), "verify cybe " + o.file);
}

int verify_morphism(const Options& o) {
    io::Diagnostics diag;
    const BraidedSystem from = io::load_system(o.from, diag);
    const BraidedSystem to = io::load_system(o.to, diag);
    const std::vector<LinMap> maps = io::maps_from_json(io::read_json(o.maps), from, to, o.maps, diag);
    flush_warnings(diag);
    return report_result(check_braided_morphism(maps, from, to), "verify morphism");
}

int glue_cmd(const Options& o) {
    io::Diagnostics diag;
    const BraidedSystem s = io::load_system(o.system, diag);
    flush_warnings(diag);
    if (o.lo < 1 || o.lo > o.hi || o.hi > s.rank())
        throw InputError("--lo/--hi: need 1 <= lo <= hi <= " + std::to_string(s.rank()));
    const BraidedSystem g = glue(s, o.lo - 1, o.hi - 1);
    io::write_json(o.out, io::system_to_json(g));
    std::cout << "glued components " << o.lo << ".." << o.hi << ", rank " << g.rank() << "\nPASS\n";
    return kPass;
}

int harness(const Options& o) {
    io::Diagnostics diag;
    BialgebraRef h = io::load_bialgebra(o.hopf, diag);
    flush_warnings(diag);
    if (o.dim == 0) throw InputError("--dim: must be positive");
    std::mt19937_64 rng(o.seed);
    std::vector<std::size_t> agree, cybe_true, applicable;
    std::vector<std::string> labels;
    std::size_t inconsistent_trials = 0;
    for (std::size_t t = 0; t < o.trials; ++t) {
        const HarnessInputs in = random_harness_inputs(*h, o.dim, rng);
        const PrecisionReport rep = precision_harness(h, in.space, in.action, in.coaction, in.mu, in.nu);
        if (labels.empty()) {
            for (const auto& row : rep.rows) labels.push_back(row.instance + " ~ " + row.axiom);
            agree.assign(labels.size(), 0);
            cybe_true.assign(labels.size(), 0);
            applicable.assign(labels.size(), 0);
        }
        for (std::size_t k = 0; k < rep.rows.size(); ++k) {
            const PrecisionRow& row = rep.rows[k];
            if (!row.side_condition) continue;
            ++applicable[k];
            if (row.cybe_holds == row.axiom_holds) ++agree[k];
            if (row.cybe_holds) ++cybe_true[k];
        }
        if (!rep.consistent()) {
            ++inconsistent_trials;
            if (inconsistent_trials == 1) {
                std::cout << "first disagreement in trial " << t << ":\n";
                for (const auto& row : rep.rows)
                    std::cout << "  " << row.instance << " ~ " << row.axiom << ": cybe=" << row.cybe_holds
                              << " axiom=" << row.axiom_holds << "\n";
            }
        }
    }
    for (std::size_t k = 0; k < labels.size(); ++k)
        std::cout << labels[k] << ": " << agree[k] << "/" << applicable[k] << " agree, " << cybe_true[k]
                  << " with both true\n";
    std::cout << (inconsistent_trials == 0 ? "PASS" : "FAIL") << "\n";
    return inconsistent_trials == 0 ? kPass : kFail;
}

int homology(const Options& o) {
    io::Diagnostics diag;
    BialgebraRef h = io::load_bialgebra(o.hopf, diag);
    io::ModuleFile m = io::load_module(o.module, diag);
    io::ModuleFile n = io::load_module(o.coeff, diag);
    m.base = io::require_same_base(h, m.base, o.module);
    n.base = io::require_same_base(h, n.base, o.coeff);
    flush_warnings(diag);
    if (o.line < 1 || o.line > 4) throw InputError("--line: expected 1..4");
    if (o.max_degree < 1) throw InputError("--max-degree: must be at least 1");
    Differential which = Differential::Total;
    if (o.differential == "d")
        which = Differential::D;
    else if (o.differential == "d_prime")
        which = Differential::DPrime;
    else if (o.differential != "total")
        throw InputError("--differential: expected total, d or d_prime");

    const GradedComplex c = table1_complex(h, m.yd(), n.yd(), o.line, o.max_degree);
    const HomologyReport rep = homology_dims(c, which, o.cohomology);
    if (!o.out.empty()) io::write_json(o.out, io::homology_report_to_json(rep, h->field(), o.line));
    std::cout << "line " << o.line << ", truncation " << rep.truncation << (o.cohomology ? ", cohomology" : "") << "\n";
    std::cout << "d d = 0: " << rep.d_squared << ", d' d' = 0: " << rep.d_prime_squared
              << ", d d' + d' d = 0: " << rep.anticommute << "\n";
    for (const auto& row : rep.rows)
        std::cout << "  degree " << row.degree << ": chains " << row.chain_dim << ", rank " << row.rank << ", dim "
                  << row.homology_dim << "\n";
    std::cout << "euler: " << rep.euler_chains << " / " << rep.euler_homology << "\n";
    const bool ok = rep.d_squared && rep.d_prime_squared && rep.anticommute && rep.euler_holds();
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Braided systems and bialgebra homology over exact fields"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto* gen = app.add_subcommand("gen", "generate example inputs");
    gen->require_subcommand(1);
    auto* gga = gen->add_subcommand("group-algebra", "group or monoid algebra");
    gga->add_option("--group", o.group, "Zn, S3, D4 or 'table FILE'")->required()->expected(1, 2);
    gga->add_option("--field", o.field, "Q or Fp:<p>");
    gga->add_option("-o,--output", o.out)->required();
    gga->callback([&] { action = [&] { return gen_group_algebra(o); }; });
    for (auto [name, regular] : {std::pair{"regular-yd", true}, std::pair{"trivial-yd", false}}) {
        auto* sub = gen->add_subcommand(name, regular ? "H over itself, adjoint action and coproduct" : "the unit YD module k");
        sub->add_option("--hopf", o.hopf)->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", o.out)->required();
        sub->callback([&, regular] { action = [&, regular] { return gen_module(o, regular); }; });
    }

    auto* chk = app.add_subcommand("check", "check axioms");
    chk->require_subcommand(1);
    for (const char* kind : {"bialgebra", "hopf", "yd", "yd-algebra", "rmatrix"}) {
        auto* sub = chk->add_subcommand(kind);
        sub->add_option("files", o.files)->required()->check(CLI::ExistingFile);
        if (std::string(kind) == "rmatrix") sub->add_option("--level", o.level, "weak, strong or quantum")->required();
        sub->callback([&, kind] { action = [&, kind] { return check(kind, o); }; });
    }

    auto* du = app.add_subcommand("dual", "dual bialgebra or YD module");
    du->require_subcommand(1);
    for (const char* kind : {"bialgebra", "yd"}) {
        auto* sub = du->add_subcommand(kind);
        sub->add_option("file", o.file)->required()->check(CLI::ExistingFile);
        sub->add_option("-o,--output", o.out)->required();
        sub->callback([&, kind] { action = [&, kind] { return dual(kind, o); }; });
    }

    auto* rm = app.add_subcommand("rmatrix", "R-matrix constructions");
    rm->require_subcommand(1);
    auto* rco = rm->add_subcommand("coaction", "YD module from an H-module and R");
    rco->add_option("--module", o.module)->required()->check(CLI::ExistingFile);
    rco->add_option("--r", o.r)->required()->check(CLI::ExistingFile);
    rco->add_option("-o,--output", o.out)->required();
    rco->callback([&] { action = [&] { return rmatrix_coaction(o); }; });
    auto* rinv = rm->add_subcommand("inverse", "inverse of R through the antipode");
    rinv->add_option("--r", o.r)->required()->check(CLI::ExistingFile);
    rinv->add_option("-o,--output", o.out)->required();
    rinv->callback([&] { action = [&] { return rmatrix_inverse(o); }; });

    auto* bld = app.add_subcommand("build", "build braided systems");
    bld->require_subcommand(1);
    auto* bys = bld->add_subcommand("yd-system", "(H, M_1..M_r, H*)");
    bys->add_option("--hopf", o.hopf)->required()->check(CLI::ExistingFile);
    bys->add_option("--mod", o.mods)->required()->check(CLI::ExistingFile);
    bys->add_option("--variant", o.variant, "ydalg or yd")->capture_default_str();
    bys->add_option("-o,--output", o.out)->required();
    bys->callback([&] { action = [&] { return build_system(o); }; });

    auto* ver = app.add_subcommand("verify", "verify braided systems");
    ver->require_subcommand(1);
    auto* vc = ver->add_subcommand("cybe", "all colored Yang-Baxter instances");
    vc->add_option("file", o.file)->required()->check(CLI::ExistingFile);
    vc->callback([&] { action = [&] { return verify_cybe_cmd(o); }; });
    auto* vm = ver->add_subcommand("morphism", "a family of maps between two systems");
    vm->add_option("--from", o.from)->required()->check(CLI::ExistingFile);
    vm->add_option("--to", o.to)->required()->check(CLI::ExistingFile);
    vm->add_option("--maps", o.maps)->required()->check(CLI::ExistingFile);
    vm->callback([&] { action = [&] { return verify_morphism(o); }; });

    auto* gl = app.add_subcommand("glue", "merge consecutive components (1-based, inclusive)");
    gl->add_option("--system", o.system)->required()->check(CLI::ExistingFile);
    gl->add_option("--lo", o.lo)->required();
    gl->add_option("--hi", o.hi)->required();
    gl->add_option("-o,--output", o.out)->required();
    gl->callback([&] { action = [&] { return glue_cmd(o); }; });

    auto* har = app.add_subcommand("harness", "randomized consistency checks");
    har->require_subcommand(1);
    auto* hp = har->add_subcommand("precision", "cYBE instances against structure axioms");
    hp->add_option("--hopf", o.hopf)->required()->check(CLI::ExistingFile);
    hp->add_option("--dim", o.dim)->capture_default_str();
    hp->add_option("--trials", o.trials)->capture_default_str();
    hp->add_option("--seed", o.seed)->capture_default_str();
    hp->callback([&] { action = [&] { return harness(o); }; });

    auto* hom = app.add_subcommand("homology", "bicomplex on H^n (x) M (x) (H*)^m (x) N*");
    hom->add_option("--hopf", o.hopf)->required()->check(CLI::ExistingFile);
    hom->add_option("--mod", o.module)->required()->check(CLI::ExistingFile);
    hom->add_option("--coeff", o.coeff)->required()->check(CLI::ExistingFile);
    hom->add_option("--line", o.line)->required();
    hom->add_option("--max-degree", o.max_degree)->required();
    hom->add_flag("--cohomology", o.cohomology);
    hom->add_option("--differential", o.differential, "total, d or d_prime")->capture_default_str();
    hom->add_option("-o,--output", o.out);
    hom->callback([&] { action = [&] { return homology(o); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kInput;
    }
    try {
        return action();
    } catch (const AxiomFailure& e) {
        std::cout << e.report().summary() << "FAIL\n";
        return kFail;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const FieldMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }
}
