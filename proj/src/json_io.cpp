#include "etkk/json_io.hpp"

#include "etkk/error.hpp"

#include <nlohmann/json.hpp>

namespace etkk {

namespace {

[[noreturn]] void bad_doc(const std::string& msg) {
    throw Error(ErrorKind::MalformedDocument, msg);
}

const json& require(const json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key))
        bad_doc("missing field \"" + key + "\"");
    return j.at(key);
}

std::size_t size_from_json(const json& j, const char* what) {
    if (!j.is_number_unsigned())
        bad_doc(std::string(what) + " must be a nonnegative integer");
    return j.get<std::size_t>();
}

} // namespace

json int_to_json(const Int& x) {
    static const Int safe_max = (Int(1) << 53) - 1;
    if (abs(x) <= safe_max)
        return json(x.get_si());
    return json(x.get_str());
}

Int int_from_json(const json& j) {
    if (j.is_number_integer())
        return Int(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            bad_doc("not a decimal integer string: " + j.dump());
        }
    }
    bad_doc("expected an integer (number or decimal string), got " + j.dump());
}

json rat_to_json(const Rat& r) {
    if (r.get_den() == 1)
        return json(r.get_num().get_str());
    return json(r.get_num().get_str() + "/" + r.get_den().get_str());
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer())
        return Rat(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        try {
            Rat r(j.get<std::string>());
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            bad_doc("not a rational string: " + j.dump());
        }
    }
    bad_doc("expected a rational (\"a/b\" string or integer), got " + j.dump());
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

IntMatrix matrix_from_json(const json& j, const char* what) {
    if (!j.is_array())
        bad_doc(std::string(what) + " must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != cols)
            bad_doc(std::string(what) + " has ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = int_from_json(row.at(c));
    }
    return m;
}

json vec_to_json(const IntVec& v) {
    json arr = json::array();
    for (const Int& x : v)
        arr.push_back(int_to_json(x));
    return arr;
}

IntVec vec_from_json(const json& j, const char* what) {
    if (!j.is_array())
        bad_doc(std::string(what) + " must be an array");
    IntVec v;
    v.reserve(j.size());
    for (const json& x : j)
        v.push_back(int_from_json(x));
    return v;
}

void emit_matrix_field(json& obj, const std::string& key, const IntMatrix& m) {
    obj[key] = matrix_to_json(m);
    if (m.rows() == 0 || m.cols() == 0) {
        obj[key + "_rows"] = m.rows();
        obj[key + "_cols"] = m.cols();
    }
}

IntMatrix read_matrix_field(const json& obj, const std::string& key) {
    IntMatrix m = matrix_from_json(require(obj, key), key.c_str());
    if (obj.contains(key + "_rows")) {
        std::size_t r = size_from_json(obj.at(key + "_rows"), (key + "_rows").c_str());
        std::size_t c = size_from_json(obj.at(key + "_cols"), (key + "_cols").c_str());
        if (m.rows() * m.cols() != 0 && (m.rows() != r || m.cols() != c))
            bad_doc(key + " shape fields contradict the entries");
        if (m.rows() == 0 || m.cols() == 0)
            m = IntMatrix(r, c);
    }
    return m;
}

json algebra_to_json(const AlgebraPresentation& a) {
    json j = json::object();
    j["p"] = a.p;
    j["k"] = vec_to_json(a.k);
    j["l"] = a.l;
    j["h"] = vec_to_json(a.h);
    emit_matrix_field(j, "alpha", a.alpha);
    emit_matrix_field(j, "beta", a.beta);
    if (!a.name.empty())
        j["name"] = a.name;
    return j;
}

AlgebraPresentation algebra_from_json(const json& j) {
    AlgebraPresentation a;
    a.p = size_from_json(require(j, "p"), "p");
    a.k = vec_from_json(require(j, "k"), "k");
    a.l = size_from_json(require(j, "l"), "l");
    a.h = vec_from_json(require(j, "h"), "h");
    a.alpha = read_matrix_field(j, "alpha");
    a.beta = read_matrix_field(j, "beta");
    // a presentation with l = 0 may write alpha as [] without shape fields
    if (a.l == 0 && a.alpha.rows() == 0)
        a.alpha = IntMatrix(0, a.p);
    if (a.l == 0 && a.beta.rows() == 0)
        a.beta = IntMatrix(0, a.p);
    if (j.contains("name"))
        a.name = j.at("name").get<std::string>();
    return a;
}

json diagram_to_json(const DiagramPair& d) {
    json j = json::object();
    emit_matrix_field(j, "lambda0", d.lambda0);
    emit_matrix_field(j, "lambda1", d.lambda1);
    return j;
}

DiagramPair diagram_from_json(const json& j) {
    return DiagramPair{read_matrix_field(j, "lambda0"), read_matrix_field(j, "lambda1")};
}

json standard_hom_to_json(const StandardHom& h) {
    json j = json::object();
    j["r"] = int_to_json(h.r);
    emit_matrix_field(j, "lambda0", h.lambda0);
    json blocks = json::array();
    for (const HomBlock& b : h.blocks) {
        json jb = json::object();
        jb["ntheta"] = vec_to_json(b.ntheta);
        jb["nplus"] = vec_to_json(b.nplus);
        jb["nminus"] = vec_to_json(b.nminus);
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = blocks;
    return j;
}

StandardHom standard_hom_from_json(const json& j) {
    StandardHom h;
    h.r = int_from_json(require(j, "r"));
    h.lambda0 = read_matrix_field(j, "lambda0");
    const json& blocks = require(j, "blocks");
    if (!blocks.is_array())
        bad_doc("blocks must be an array");
    for (const json& jb : blocks) {
        HomBlock b;
        b.ntheta = vec_from_json(require(jb, "ntheta"), "ntheta");
        b.nplus = vec_from_json(require(jb, "nplus"), "nplus");
        b.nminus = vec_from_json(require(jb, "nminus"), "nminus");
        h.blocks.push_back(std::move(b));
    }
    return h;
}

json m_standard_hom_to_json(const MStandardHom& h) {
    json j = json::object();
    j["m"] = h.m;
    j["r"] = int_to_json(h.r);
    emit_matrix_field(j, "lambda0", h.lambda0);
    json rows = json::array();
    for (const auto& blockcells : h.cells) {
        json row = json::array();
        for (const MCell& c : blockcells) {
            json jc = json::object();
            jc["ntheta"] = vec_to_json(c.ntheta);
            jc["nplus"] = vec_to_json(c.nplus);
            jc["nminus"] = vec_to_json(c.nminus);
            jc["left_trace"] = vec_to_json(c.left_trace);
            jc["right_trace"] = vec_to_json(c.right_trace);
            row.push_back(std::move(jc));
        }
        rows.push_back(std::move(row));
    }
    j["cells"] = rows;
    return j;
}

MStandardHom m_standard_hom_from_json(const json& j) {
    MStandardHom h;
    h.m = size_from_json(require(j, "m"), "m");
    h.r = int_from_json(require(j, "r"));
    h.lambda0 = read_matrix_field(j, "lambda0");
    const json& rows = require(j, "cells");
    if (!rows.is_array())
        bad_doc("cells must be an array of arrays");
    for (const json& row : rows) {
        if (!row.is_array())
            bad_doc("cells must be an array of arrays");
        std::vector<MCell> blockcells;
        for (const json& jc : row) {
            MCell c;
            c.ntheta = vec_from_json(require(jc, "ntheta"), "ntheta");
            c.nplus = vec_from_json(require(jc, "nplus"), "nplus");
            c.nminus = vec_from_json(require(jc, "nminus"), "nminus");
            c.left_trace = vec_from_json(require(jc, "left_trace"), "left_trace");
            c.right_trace = vec_from_json(require(jc, "right_trace"), "right_trace");
            blockcells.push_back(std::move(c));
        }
        h.cells.push_back(std::move(blockcells));
    }
    return h;
}

json pl_hom_to_json(const PLHom& h) {
    json j = json::object();
    j["m"] = h.m;
    emit_matrix_field(j, "lambda0", h.lambda0);
    json cells = json::array();
    for (const auto& blockcells : h.cells)
        for (const PLHomCell& c : blockcells) {
            json jc = json::object();
            jc["block"] = c.block + 1;
            json paths = json::array();
            for (const PLPath& p : c.paths) {
                json jp = json::object();
                if (p.is_theta)
                    jp["source"] = "theta:" + std::to_string(p.index + 1);
                else
                    jp["source"] = p.index + 1;
                json bps = json::array();
                for (const auto& [t, v] : p.breakpoints)
                    bps.push_back(json::array({rat_to_json(t), rat_to_json(v)}));
                jp["breakpoints"] = bps;
                jp["mult"] = int_to_json(p.mult);
                paths.push_back(std::move(jp));
            }
            jc["paths"] = paths;
            cells.push_back(std::move(jc));
        }
    j["cells"] = cells;
    return j;
}

PLHom pl_hom_from_json(const json& j) {
    PLHom h;
    h.m = size_from_json(require(j, "m"), "m");
    if (h.m < 1)
        bad_doc("m must be at least 1");
    h.lambda0 = read_matrix_field(j, "lambda0");
    const json& cells = require(j, "cells");
    if (!cells.is_array())
        bad_doc("cells must be an array");
    // Entries arrive flattened; the s-th entry for a block is its s-th
    // dividing interval.
    std::size_t max_block = 0;
    for (const json& jc : cells) {
        std::size_t blk = size_from_json(require(jc, "block"), "block");
        if (blk < 1)
            bad_doc("block indices are 1-based");
        max_block = std::max(max_block, blk);
    }
    h.cells.resize(max_block);
    for (const json& jc : cells) {
        PLHomCell c;
        c.block = size_from_json(jc.at("block"), "block") - 1;
        const json& paths = require(jc, "paths");
        if (!paths.is_array())
            bad_doc("paths must be an array");
        for (const json& jp : paths) {
            PLPath p;
            const json& src = require(jp, "source");
            if (src.is_string()) {
                std::string s = src.get<std::string>();
                if (s.rfind("theta:", 0) != 0)
                    bad_doc("string sources must look like \"theta:i\"");
                std::size_t idx = 0;
                try {
                    std::size_t used = 0;
                    idx = std::stoul(s.substr(6), &used);
                    if (used != s.size() - 6)
                        bad_doc("not a theta index: " + s);
                } catch (const std::logic_error&) {
                    bad_doc("not a theta index: " + s);
                }
                if (idx < 1)
                    bad_doc("theta indices are 1-based");
                p.is_theta = true;
                p.index = idx - 1;
            } else {
                p.is_theta = false;
                p.index = size_from_json(src, "source") - 1;
            }
            if (jp.contains("breakpoints")) {
                const json& bps = jp.at("breakpoints");
                if (!bps.is_array())
                    bad_doc("breakpoints must be an array of [t, v] pairs");
                for (const json& bp : bps) {
                    if (!bp.is_array() || bp.size() != 2)
                        bad_doc("breakpoints must be [t, v] pairs");
                    p.breakpoints.emplace_back(rat_from_json(bp.at(0)), rat_from_json(bp.at(1)));
                }
            }
            p.mult = jp.contains("mult") ? int_from_json(jp.at("mult")) : Int(1);
            c.paths.push_back(std::move(p));
        }
        if (c.block >= h.cells.size())
            bad_doc("block index out of range");
        h.cells[c.block].push_back(std::move(c));
    }
    for (auto& blockcells : h.cells)
        if (blockcells.size() != h.m)
            bad_doc("every block needs exactly m cell entries");
    return h;
}

namespace {

const char* lemma_name(StepKind k) {
    static std::string names[] = {"M_TO_1", "DIAGRAM_CORRECTION", "SAME_DIAGRAM", "DIRECT_SUM",
                                  "TRICK"};
    return names[static_cast<int>(k)].c_str();
}

StepKind lemma_from_name(const std::string& s) {
    if (s == "M_TO_1")
        return StepKind::MToOne;
    if (s == "DIAGRAM_CORRECTION")
        return StepKind::DiagramCorrection;
    if (s == "SAME_DIAGRAM")
        return StepKind::SameDiagram;
    if (s == "DIRECT_SUM")
        return StepKind::DirectSum;
    if (s == "TRICK")
        return StepKind::Trick;
    throw Error(ErrorKind::MalformedCertificate, "unknown lemma tag \"" + s + "\"");
}

} // namespace

json certificate_to_json(const HomotopyCertificate& c) {
    json steps = json::array();
    for (const CertStep& s : c.steps) {
        json js = json::object();
        js["lemma"] = lemma_name(s.lemma);
        js["side"] = s.side;
        js["stabilizer"] = standard_hom_to_json(s.stabilizer);
        if (s.result)
            js["result"] = standard_hom_to_json(*s.result);
        if (!s.cut_points.empty()) {
            json cp = json::array();
            for (const Rat& r : s.cut_points)
                cp.push_back(rat_to_json(r));
            js["cut_points"] = cp;
        }
        if (s.lemma == StepKind::DiagramCorrection) {
            js["unit_row"] = s.unit_row + 1;
            js["unit_col"] = s.unit_col + 1;
            js["sign"] = s.sign;
            js["padding"] = int_to_json(s.padding);
        }
        js["pre"] = json{{"side1", diagram_to_json(s.pre1)}, {"side2", diagram_to_json(s.pre2)}};
        js["post"] = json{{"side1", diagram_to_json(s.post1)}, {"side2", diagram_to_json(s.post2)}};
        steps.push_back(std::move(js));
    }
    return json{{"steps", steps}};
}

HomotopyCertificate certificate_from_json(const json& j) {
    auto bad_cert = [](const std::string& msg) {
        throw Error(ErrorKind::MalformedCertificate, msg);
    };
    if (!j.is_object() || !j.contains("steps") || !j.at("steps").is_array())
        bad_cert("a certificate is an object with a \"steps\" array");
    HomotopyCertificate c;
    for (const json& js : j.at("steps")) {
        CertStep s;
        if (!js.contains("lemma") || !js.at("lemma").is_string())
            bad_cert("step without a lemma tag");
        s.lemma = lemma_from_name(js.at("lemma").get<std::string>());
        if (!js.contains("side") || !js.at("side").is_number_integer())
            bad_cert("step without a side");
        s.side = js.at("side").get<int>();
        s.stabilizer = standard_hom_from_json(require(js, "stabilizer"));
        if (js.contains("result"))
            s.result = standard_hom_from_json(js.at("result"));
        if (js.contains("cut_points"))
            for (const json& r : js.at("cut_points"))
                s.cut_points.push_back(rat_from_json(r));
        if (s.lemma == StepKind::DiagramCorrection) {
            std::size_t ur = size_from_json(require(js, "unit_row"), "unit_row");
            std::size_t uc = size_from_json(require(js, "unit_col"), "unit_col");
            if (ur < 1 || uc < 1)
                bad_cert("unit indices are 1-based");
            s.unit_row = ur - 1;
            s.unit_col = uc - 1;
            s.sign = require(js, "sign").get<int>();
            s.padding = int_from_json(require(js, "padding"));
        }
        s.pre1 = diagram_from_json(require(require(js, "pre"), "side1"));
        s.pre2 = diagram_from_json(require(js.at("pre"), "side2"));
        s.post1 = diagram_from_json(require(require(js, "post"), "side1"));
        s.post2 = diagram_from_json(require(js.at("post"), "side2"));
        c.steps.push_back(std::move(s));
    }
    return c;
}

std::string dump_document(const json& j) { return j.dump() + "\n"; }

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(ErrorKind::MalformedDocument, "not valid JSON");
    return j;
}

} // namespace etkk
