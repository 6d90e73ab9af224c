// etkk: exact K-theory and stable-homotopy computations for unital
// one-dimensional NCCW complexes, driven by JSON documents.

#include "etkk/error.hpp"
#include "etkk/json_io.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace etkk;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitInvalid = 2;

struct Workspace {
    bool active = false;
    fs::path dir;
    json manifest = json::object();

    void open(const std::string& d) {
        active = true;
        dir = d;
        fs::create_directories(dir);
        fs::path mf = dir / "manifest.json";
        if (fs::exists(mf)) {
            std::ifstream in(mf);
            std::string text((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
            manifest = parse_document(text);
        }
        if (!manifest.contains("documents"))
            manifest["documents"] = json::object();
    }

    fs::path resolve(const std::string& name) const {
        if (!active)
            return name;
        const json& docs = manifest.at("documents");
        if (docs.contains(name))
            return dir / docs.at(name).get<std::string>();
        if (fs::exists(dir / name))
            return dir / name;
        return name;
    }

    fs::path place(const std::string& name) {
        if (!active)
            return name;
        std::string file = name;
        if (fs::path(file).extension() != ".json")
            file += ".json";
        manifest["documents"][name] = file;
        save();
        return dir / file;
    }

    void save() const {
        if (!active)
            return;
        std::ofstream out(dir / "manifest.json");
        out << dump_document(manifest);
    }
};

Workspace workspace;
bool json_output = false;

json load_json(const std::string& name) {
    fs::path path = workspace.resolve(name);
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MalformedDocument, "cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_document(text);
}

void write_doc(const std::string& name, const json& j) {
    fs::path path = workspace.active ? workspace.place(name) : fs::path(name);
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::MalformedDocument, "cannot write " + path.string());
    out << dump_document(j);
}

AlgebraPresentation load_algebra(const std::string& name) {
    AlgebraPresentation a = algebra_from_json(load_json(name));
    validate(a);
    if (a.name.empty())
        a.name = fs::path(name).stem().string();
    return a;
}

// hom files may carry 1-standard or m-standard data; both are consumed as
// m-standard internally
MStandardHom load_hom(const std::string& name, const AlgebraPresentation& a,
                      const AlgebraPresentation& b) {
    json j = load_json(name);
    MStandardHom h =
        j.contains("cells") ? m_standard_hom_from_json(j) : as_m_standard(a, b, standard_hom_from_json(j));
    validate_m_standard(a, b, h);
    return h;
}

std::string group_str(const AbelianGroup& g) { return g.to_string(); }

json group_json(const AbelianGroup& g) {
    return json{{"free_rank", g.free_rank}, {"torsion", vec_to_json(g.torsion)}};
}

json class_json(const KKClass& c) {
    return json{{"free", vec_to_json(c.free_part)}, {"torsion", vec_to_json(c.torsion_part)}};
}

std::string diagram_str(const DiagramPair& d) {
    return "lambda0 = " + d.lambda0.to_string() + ", lambda1 = " + d.lambda1.to_string();
}

int cmd_k(const std::string& afile) {
    AlgebraPresentation a = load_algebra(afile);
    KTheoryResult kt = k_theory(a);
    AbelianGroup k0{kt.k0_rank, {}};
    if (json_output) {
        json j = json::object();
        j["k0_rank"] = kt.k0_rank;
        j["k0_basis"] = matrix_to_json(kt.k0_basis);
        j["k1"] = group_json(kt.k1);
        j["scale"] = vec_to_json(kt.scale);
        std::cout << dump_document(j);
        return kExitTrue;
    }
    std::cout << "K-theory of " << a.name << "\n";
    std::cout << "  K0 = " << group_str(k0) << "\n";
    for (std::size_t c = 0; c < kt.k0_basis.cols(); ++c)
        std::cout << "    basis " << c + 1 << ": " << to_string(kt.k0_basis.col_vec(c)) << "\n";
    std::cout << "  scale [1] = " << to_string(kt.scale) << "\n";
    std::cout << "  K1 = " << group_str(kt.k1) << "\n";
    return kExitTrue;
}

int cmd_kk(const std::string& afile, const std::string& bfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    KKPresentation kk(a, b);
    if (json_output) {
        json gens = json::array();
        for (const auto& [d, order] : kk.generators())
            gens.push_back(json{{"order", int_to_json(order)}, {"diagram", diagram_to_json(d)}});
        json j = json::object();
        j["group"] = group_json(kk.group());
        j["generators"] = gens;
        std::cout << dump_document(j);
        return kExitTrue;
    }
    std::cout << "KK(" << a.name << ", " << b.name << ") = " << group_str(kk.group()) << "\n";
    for (const auto& [d, order] : kk.generators()) {
        std::cout << "  generator";
        if (order != 0)
            std::cout << " of order " << order.get_str();
        std::cout << ": " << diagram_str(d) << "\n";
    }
    return kExitTrue;
}

int cmd_class(const std::string& afile, const std::string& bfile, const std::string& hfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    MStandardHom h = load_hom(hfile, a, b);
    KKPresentation kk(a, b);
    KKClass cls = kk.kk_class(induced_diagram(a, b, h));
    if (json_output) {
        std::cout << dump_document(class_json(cls));
        return kExitTrue;
    }
    std::cout << "KK-class in " << group_str(kk.group()) << ": " << cls.to_string() << "\n";
    return kExitTrue;
}

int cmd_decide(const std::string& afile, const std::string& bfile, const std::string& h1file,
               const std::string& h2file, const std::string& certfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    MStandardHom h1 = load_hom(h1file, a, b), h2 = load_hom(h2file, a, b);
    DecisionResult res = decide_stable_homotopy(a, b, h1, h2);
    if (res.homotopic && !certfile.empty())
        write_doc(certfile, certificate_to_json(*res.certificate));
    if (json_output) {
        json j = json::object();
        j["homotopic"] = res.homotopic;
        j["kk_difference"] = class_json(res.kk_difference);
        if (res.witness)
            j["witness"] = standard_hom_to_json(*res.witness);
        if (res.homotopic && !certfile.empty())
            j["certificate_file"] = certfile;
        std::cout << dump_document(j);
    } else if (res.homotopic) {
        std::cout << "stably homotopic; witness has finite dimensional image (r = "
                  << res.witness->r.get_str() << ")\n";
        if (!certfile.empty())
            std::cout << "certificate written to " << certfile << "\n";
    } else {
        std::cout << "not stably homotopic; KK difference " << res.kk_difference.to_string()
                  << "\n";
    }
    return res.homotopic ? kExitTrue : kExitFalse;
}

int cmd_verify(const std::string& afile, const std::string& bfile, const std::string& h1file,
               const std::string& h2file, const std::string& certfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    MStandardHom h1 = load_hom(h1file, a, b), h2 = load_hom(h2file, a, b);
    HomotopyCertificate cert = certificate_from_json(load_json(certfile));
    bool ok = verify_certificate(a, b, h1, h2, cert);
    if (json_output)
        std::cout << dump_document(json{{"valid", ok}});
    else
        std::cout << (ok ? "certificate verifies\n" : "certificate REJECTED\n");
    return ok ? kExitTrue : kExitFalse;
}

int cmd_realize(const std::string& afile, const std::string& bfile, const std::string& dfile,
                std::optional<long> c, bool auto_c, const std::string& outfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    DiagramPair d = diagram_from_json(load_json(dfile));
    if (!check_diagram(a, b, d))
        throw Error(ErrorKind::NotInC, "input diagram fails the commuting condition");
    Int padding = auto_c ? minimal_padding(a, b, d) : Int(c.value_or(0));
    StandardHom h;
    try {
        h = realize_diagram(a, b, d, padding);
    } catch (const NotRealizableError& e) {
        if (json_output)
            std::cout << dump_document(json{{"realizable", false},
                                            {"padding", int_to_json(padding)},
                                            {"worst_entry", int_to_json(e.worst_entry())}});
        else
            std::cout << "not realizable at c = " << padding.get_str() << ": " << e.what()
                      << "\n";
        return kExitFalse;
    }
    json jh = standard_hom_to_json(h);
    if (!outfile.empty())
        write_doc(outfile, jh);
    if (json_output) {
        json j = json::object();
        j["realizable"] = true;
        j["padding"] = int_to_json(padding);
        j["hom"] = jh;
        std::cout << dump_document(j);
    } else {
        std::cout << "realized at c = " << padding.get_str() << ", r = " << h.r.get_str()
                  << "\n";
        if (outfile.empty())
            std::cout << dump_document(jh);
    }
    return kExitTrue;
}

int cmd_reduce(const std::string& afile, const std::string& bfile, const std::string& hfile,
               const std::string& outfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    MStandardHom psi = load_hom(hfile, a, b);
    ReductionResult red = reduce_to_1_standard(a, b, psi);
    json j = json::object();
    j["stabilizer"] = standard_hom_to_json(red.stabilizer);
    j["reduced"] = standard_hom_to_json(red.reduced);
    j["certificate"] = certificate_to_json(red.certificate);
    if (!outfile.empty())
        write_doc(outfile, j);
    if (json_output)
        std::cout << dump_document(j);
    else {
        std::cout << "reduced to 1-standard form: r = " << red.reduced.r.get_str()
                  << ", stabilizer r = " << red.stabilizer.r.get_str() << "\n";
        if (outfile.empty())
            std::cout << dump_document(j);
    }
    return kExitTrue;
}

int cmd_normalize(const std::string& afile, const std::string& bfile, const std::string& plfile,
                  const std::string& outfile) {
    AlgebraPresentation a = load_algebra(afile), b = load_algebra(bfile);
    PLHom pl = pl_hom_from_json(load_json(plfile));
    MStandardHom m = normalize(a, b, pl);
    json j = m_standard_hom_to_json(m);
    if (!outfile.empty())
        write_doc(outfile, j);
    if (json_output || outfile.empty())
        std::cout << dump_document(j);
    else
        std::cout << "normalized to " << m.m << "-standard form, r = " << m.r.get_str() << "\n";
    return kExitTrue;
}

int cmd_property_h(const std::string& afile, long capital_l, const std::string& prefix) {
    AlgebraPresentation a = load_algebra(afile);
    PropertyHWitness w;
    try {
        w = property_h_witness(a, capital_l);
    } catch (const LTooSmallError& e) {
        if (json_output)
            std::cout << dump_document(
                json{{"ok", false}, {"sufficient_L", int_to_json(e.sufficient_l())}});
        else
            std::cout << e.what() << "\n";
        return kExitFalse;
    }
    std::string stem = prefix.empty()
                           ? (workspace.active ? a.name : fs::path(afile).stem().string())
                           : prefix;
    std::string phi_name = stem + ".phi.json";
    std::string psi_name = stem + ".psi.json";
    write_doc(phi_name, standard_hom_to_json(w.phi_hom));
    write_doc(psi_name, standard_hom_to_json(w.psi_hom));
    if (json_output) {
        json j = json::object();
        j["check"] = w.check;
        j["phi_diagram"] = diagram_to_json(w.phi_diagram);
        j["phi_file"] = phi_name;
        j["psi_file"] = psi_name;
        std::cout << dump_document(j);
    } else {
        std::cout << "phi written to " << phi_name << " (r = " << w.phi_hom.r.get_str()
                  << "), psi written to " << psi_name << " (r = " << w.psi_hom.r.get_str()
                  << ")\n";
        std::cout << "KK(id + phi) == KK(psi): " << (w.check ? "true" : "false") << "\n";
    }
    return w.check ? kExitTrue : kExitFalse;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact KK-theory and stable homotopy for one-dimensional NCCW complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string wsdir;
    app.add_flag("--json", json_output, "machine-readable output");
    app.add_option("--workspace", wsdir, "directory of named documents with a manifest");

    std::string afile, bfile, h1file, h2file, dfile, certfile, outfile, prefix;
    std::optional<long> cval;
    bool auto_c = false;
    long capital_l = 1;

    // global flags may trail the positionals of any subcommand
    auto* k = app.add_subcommand("k", "K-theory of a presentation");
    k->add_option("A", afile)->required();

    auto* kk = app.add_subcommand("kk", "KK group of a pair of presentations");
    kk->add_option("A", afile)->required();
    kk->add_option("B", bfile)->required();

    auto* cls = app.add_subcommand("class", "KK-class coordinates of a homomorphism");
    cls->add_option("A", afile)->required();
    cls->add_option("B", bfile)->required();
    cls->add_option("hom", h1file)->required();

    auto* dec = app.add_subcommand("decide", "decide stable homotopy of two homomorphisms");
    dec->add_option("A", afile)->required();
    dec->add_option("B", bfile)->required();
    dec->add_option("h1", h1file)->required();
    dec->add_option("h2", h2file)->required();
    dec->add_option("--certificate", certfile, "write the homotopy certificate here");

    auto* ver = app.add_subcommand("verify", "check a homotopy certificate");
    ver->add_option("A", afile)->required();
    ver->add_option("B", bfile)->required();
    ver->add_option("h1", h1file)->required();
    ver->add_option("h2", h2file)->required();
    ver->add_option("certificate", certfile)->required();

    auto* rea = app.add_subcommand("realize", "realize a diagram as a 1-standard homomorphism");
    rea->add_option("A", afile)->required();
    rea->add_option("B", bfile)->required();
    rea->add_option("diagram", dfile)->required();
    auto* copt = rea->add_option("--c", cval, "padding constant");
    rea->add_flag("--auto", auto_c, "find the minimal padding")->excludes(copt);
    rea->add_option("--out", outfile, "write the homomorphism here");

    auto* red = app.add_subcommand("reduce", "reduce m-standard data to 1-standard form");
    red->add_option("A", afile)->required();
    red->add_option("B", bfile)->required();
    red->add_option("hom", h1file)->required();
    red->add_option("--out", outfile, "write stabilizer/reduced/certificate here");

    auto* nor = app.add_subcommand("normalize", "normalize a PL homomorphism to m-standard form");
    nor->add_option("A", afile)->required();
    nor->add_option("B", bfile)->required();
    nor->add_option("pl", dfile)->required();
    nor->add_option("--out", outfile, "write the m-standard data here");

    auto* ph = app.add_subcommand("property-h", "emit property (H) witness homomorphisms");
    ph->add_option("A", afile)->required();
    ph->add_option("--L", capital_l, "amplification level")->required();
    ph->add_option("--out", prefix, "output file prefix");

    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitTrue : kExitInvalid;
    }

    try {
        if (!wsdir.empty())
            workspace.open(wsdir);
        if (k->parsed())
            return cmd_k(afile);
        if (kk->parsed())
            return cmd_kk(afile, bfile);
        if (cls->parsed())
            return cmd_class(afile, bfile, h1file);
        if (dec->parsed())
            return cmd_decide(afile, bfile, h1file, h2file, certfile);
        if (ver->parsed())
            return cmd_verify(afile, bfile, h1file, h2file, certfile);
        if (rea->parsed())
            return cmd_realize(afile, bfile, dfile, cval, auto_c, outfile);
        if (red->parsed())
            return cmd_reduce(afile, bfile, h1file, outfile);
        if (nor->parsed())
            return cmd_normalize(afile, bfile, dfile, outfile);
        if (ph->parsed()) {
            if (capital_l < 1) {
                std::cerr << "error: L must be at least 1\n";
                return kExitFalse;
            }
            return cmd_property_h(afile, capital_l, prefix);
        }
    } catch (const LTooSmallError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFalse;
    } catch (const NotRealizableError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFalse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
