#include "lgq/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace lgq {

json jnum(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double jnum_get(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "nan") return std::nan("");
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw Error(ErrorCode::PARSE_ERROR, "not a number: " + s);
    }
    return j.get<double>();
}

json to_json(C v) { return json{{"re", jnum(v.real())}, {"im", jnum(v.imag())}}; }

C complex_from_json(const json& j) { return {jnum_get(j.at("re")), jnum_get(j.at("im"))}; }

namespace {

json mobius_to_json(const MobiusMat& s) {
    return json{{"a", to_json(s.a)}, {"b", to_json(s.b)}, {"c", to_json(s.c)},
                {"d", to_json(s.d)}};
}

MobiusMat mobius_from_json(const json& j) {
    return MobiusMat(complex_from_json(j.at("a")), complex_from_json(j.at("b")),
                     complex_from_json(j.at("c")), complex_from_json(j.at("d")));
}

json circline_to_json(const Circline& c) {
    return json{{"is_line", c.is_line},
                {"center", to_json(c.center)},
                {"radius", jnum(c.radius)},
                {"point", to_json(c.point)},
                {"dir", to_json(c.dir)}};
}

Circline circline_from_json(const json& j) {
    Circline c;
    c.is_line = j.at("is_line").get<bool>();
    c.center = complex_from_json(j.at("center"));
    c.radius = jnum_get(j.at("radius"));
    c.point = complex_from_json(j.at("point"));
    c.dir = complex_from_json(j.at("dir"));
    return c;
}

bool same_bits(double a, double b) {
    if (std::isnan(a) || std::isnan(b)) return std::isnan(a) && std::isnan(b);
    return a == b && std::signbit(a) == std::signbit(b);
}

bool same_bits(C a, C b) { return same_bits(a.real(), b.real()) && same_bits(a.imag(), b.imag()); }

bool same_bits(const MobiusMat& a, const MobiusMat& b) {
    return same_bits(a.a, b.a) && same_bits(a.b, b.b) && same_bits(a.c, b.c) &&
           same_bits(a.d, b.d);
}

} // namespace

json to_json(const ConjClass& c) {
    return json{{"tag", to_string(c.tag)},
                {"param", jnum(c.param)},
                {"canonical", mobius_to_json(c.canonical)},
                {"witness", mobius_to_json(c.witness)},
                {"sign", c.sign}};
}

ConjClass conjclass_from_json(const json& j) {
    ConjClass c;
    const std::string tag = j.at("tag").get<std::string>();
    if (tag == "DIAG")
        c.tag = ConjTag::DIAG;
    else if (tag == "ROTATION")
        c.tag = ConjTag::ROTATION;
    else if (tag == "UNIPOTENT")
        c.tag = ConjTag::UNIPOTENT;
    else
        throw Error(ErrorCode::PARSE_ERROR, "unknown conjugate-similarity tag: " + tag);
    c.param = jnum_get(j.at("param"));
    c.canonical = mobius_from_json(j.at("canonical"));
    c.witness = mobius_from_json(j.at("witness"));
    c.sign = j.at("sign").get<int>();
    return c;
}

bool equal_bits(const ConjClass& a, const ConjClass& b) {
    return a.tag == b.tag && same_bits(a.param, b.param) &&
           same_bits(a.canonical, b.canonical) && same_bits(a.witness, b.witness) &&
           a.sign == b.sign;
}

json to_json(const EFixSet& e) {
    json pts = json::array();
    for (const ExtC& p : e.points) {
        json pt{{"inf", p.inf}};
        if (!p.inf) pt["value"] = to_json(p.v);
        pts.push_back(pt);
    }
    json out{{"kind", e.kind == EFixSet::Kind::FINITE ? "FINITE" : "CIRCLINE"},
             {"points", pts}};
    if (e.kind == EFixSet::Kind::CIRCLINE) out["circline"] = circline_to_json(e.circline);
    return out;
}

json to_json(const HyperplaneClass& h) {
    json rep = json::array();
    for (int k = 0; k < 4; ++k) rep.push_back(to_json(h.canonical.rep[k]));
    return json{{"tag", to_string(h.tag)},
                {"param", jnum(h.param)},
                {"canonical", rep},
                {"invariant", json{{"value", jnum(h.invariant.value)},
                                   {"infinite", h.invariant.infinite}}},
                {"invariant_defined", h.invariant_defined}};
}

json to_json(const AreaResult& a) {
    json stages = json::array();
    for (double s : a.stages) stages.push_back(jnum(s));
    return json{{"verdict", to_string(a.verdict)},
                {"value", jnum(a.value)},
                {"signed_value", jnum(a.signed_value)},
                {"stages", stages}};
}

json to_json(const RootCertificate& r) {
    return json{{"root", to_json(r.root)},
                {"box", json::array({jnum(r.box_x0), jnum(r.box_x1), jnum(r.box_y0),
                                     jnum(r.box_y1)})},
                {"index", r.index},
                {"winding", r.winding},
                {"residual", jnum(r.residual)},
                {"low_confidence", r.low_confidence}};
}

RootCertificate rootcert_from_json(const json& j) {
    RootCertificate r;
    r.root = complex_from_json(j.at("root"));
    const json& box = j.at("box");
    r.box_x0 = jnum_get(box.at(0));
    r.box_x1 = jnum_get(box.at(1));
    r.box_y0 = jnum_get(box.at(2));
    r.box_y1 = jnum_get(box.at(3));
    r.index = j.at("index").get<int>();
    r.winding = j.at("winding").get<int>();
    r.residual = jnum_get(j.at("residual"));
    r.low_confidence = j.at("low_confidence").get<bool>();
    return r;
}

json to_json(const EfResult& r) {
    json roots = json::array();
    for (const RootCertificate& c : r.roots) roots.push_back(to_json(c));
    json out{{"kind", r.kind == EfResult::Kind::DISCRETE ? "DISCRETE" : "CIRCLINE"},
             {"roots", roots},
             {"infinity_member", r.infinity_member},
             {"normalizer", mobius_to_json(r.normalizer)},
             {"normalized", r.normalized},
             {"index_sum", r.index_sum},
             {"m", r.m}};
    if (r.kind == EfResult::Kind::CIRCLINE) out["circline"] = circline_to_json(r.circline);
    return out;
}

EfResult efresult_from_json(const json& j) {
    EfResult r;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "DISCRETE")
        r.kind = EfResult::Kind::DISCRETE;
    else if (kind == "CIRCLINE")
        r.kind = EfResult::Kind::CIRCLINE;
    else
        throw Error(ErrorCode::PARSE_ERROR, "unknown solution-set kind: " + kind);
    for (const json& c : j.at("roots")) r.roots.push_back(rootcert_from_json(c));
    r.infinity_member = j.at("infinity_member").get<bool>();
    r.normalizer = mobius_from_json(j.at("normalizer"));
    r.normalized = j.at("normalized").get<bool>();
    r.index_sum = j.at("index_sum").get<int>();
    r.m = j.at("m").get<int>();
    if (j.contains("circline")) r.circline = circline_from_json(j.at("circline"));
    return r;
}

bool equal_bits(const EfResult& a, const EfResult& b) {
    if (a.kind != b.kind || a.roots.size() != b.roots.size() ||
        a.infinity_member != b.infinity_member || a.normalized != b.normalized ||
        a.index_sum != b.index_sum || a.m != b.m)
        return false;
    if (!same_bits(a.normalizer, b.normalizer)) return false;
    for (size_t i = 0; i < a.roots.size(); ++i) {
        const RootCertificate &x = a.roots[i], &y = b.roots[i];
        if (!same_bits(x.root, y.root) || !same_bits(x.box_x0, y.box_x0) ||
            !same_bits(x.box_x1, y.box_x1) || !same_bits(x.box_y0, y.box_y0) ||
            !same_bits(x.box_y1, y.box_y1) || x.index != y.index || x.winding != y.winding ||
            !same_bits(x.residual, y.residual) || x.low_confidence != y.low_confidence)
            return false;
    }
    if (a.kind == EfResult::Kind::CIRCLINE) {
        if (a.circline.is_line != b.circline.is_line ||
            !same_bits(a.circline.center, b.circline.center) ||
            !same_bits(a.circline.radius, b.circline.radius) ||
            !same_bits(a.circline.point, b.circline.point) ||
            !same_bits(a.circline.dir, b.circline.dir))
            return false;
    }
    return true;
}

json to_json(const BoundsReport& b) {
    return json{{"m", b.m},
                {"ef_count", b.ef_count},
                {"index_sum", b.index_sum},
                {"q1_lo", b.q1_lo},
                {"q1_hi", b.q1_hi},
                {"flat_forced_degree", b.flat_forced_degree},
                {"flat_forced_count", b.flat_forced_count},
                {"count_anomaly", b.count_anomaly}};
}

json to_json(const WReport& r) {
    json punctures = json::array();
    for (const PunctureCheck& p : r.punctures) {
        punctures.push_back(json{{"p", to_json(p.p)},
                                 {"ord_f", p.ord_f},
                                 {"ord_psi1", p.ord_psi1},
                                 {"ord_psi2", p.ord_psi2},
                                 {"ord_phi", p.ord_phi},
                                 {"declared", p.declared},
                                 {"ok", p.ok}});
    }
    json loops = json::array();
    for (const LoopCheck& l : r.loops) {
        loops.push_back(json{{"center", to_json(l.loop.center)},
                             {"radius", jnum(l.loop.radius)},
                             {"per_psi1dh", to_json(l.per_psi1dh)},
                             {"per_psi2dh", to_json(l.per_psi2dh)},
                             {"per_dh", to_json(l.per_dh)},
                             {"per_psi12dh", to_json(l.per_psi12dh)},
                             {"resid_conj", jnum(l.resid_conj)},
                             {"resid_re_dh", jnum(l.resid_re_dh)},
                             {"resid_re_psi12", jnum(l.resid_re_psi12)},
                             {"ok", l.ok}});
    }
    return json{{"min_gap", jnum(r.min_gap)},
                {"min_gap_at", to_json(r.min_gap_at)},
                {"gap_flag", r.gap_flag},
                {"punctures", punctures},
                {"loops", loops},
                {"all_ok", r.all_ok}};
}

json to_json(const TotalCurvature& t) {
    json stages = json::array(), ustages = json::array();
    for (double s : t.stages) stages.push_back(jnum(s));
    for (double s : t.unsigned_stages) ustages.push_back(jnum(s));
    return json{{"verdict", to_string(t.verdict)},
                {"value", jnum(t.value)},
                {"unsigned_value", jnum(t.unsigned_value)},
                {"stages", stages},
                {"unsigned_stages", ustages}};
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

void put_num(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[32];
    snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

} // namespace

void write_obj(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# weierstrass surface mesh, " << mesh.nu << "x" << mesh.nv << " grid";
    if (mesh.dual) out << ", immersion in R^4";
    if (mesh.multivalued) out << ", integrated across a cut";
    out << "\n";
    std::vector<int> remap(mesh.pos.size(), 0);
    int next = 1;
    for (size_t i = 0; i < mesh.pos.size(); ++i) {
        if (!mesh.valid[i]) continue;
        remap[i] = next++;
        out << "v ";
        put_num(out, mesh.pos[i][0]);
        out << " ";
        put_num(out, mesh.pos[i][1]);
        out << " ";
        put_num(out, mesh.pos[i][2]);
        out << "\n# t ";
        put_num(out, mesh.pos[i][3]);
        out << "\n";
    }
    for (const std::array<int, 3>& f : mesh.faces)
        out << "f " << remap[f[0]] << " " << remap[f[1]] << " " << remap[f[2]] << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_csv(const SurfaceMesh& mesh, const std::string& path) {
    std::ofstream out = open_out(path);
    out << "z_re,z_im,x1,x2,x3,x4,lambda2,K\n";
    for (size_t i = 0; i < mesh.pos.size(); ++i) {
        if (!mesh.valid[i]) continue;
        put_num(out, mesh.params[i].real());
        out << ",";
        put_num(out, mesh.params[i].imag());
        for (int k = 0; k < 4; ++k) {
            out << ",";
            put_num(out, mesh.pos[i][k]);
        }
        out << ",";
        put_num(out, mesh.lambda2[i]);
        out << ",";
        put_num(out, mesh.K[i]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out = open_out(path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace lgq
