#include "appendix_fixture.hpp"
#include "horokit/classify.hpp"
#include "horokit/divisor.hpp"
#include "horokit/mmp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace horokit;
using json = nlohmann::ordered_json;

namespace {

// exit codes
constexpr int OK = 0, FAILED = 1, BAD_INPUT = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void bad(const std::string& msg) { throw InputError(msg); }

// ---- spec files ----

struct Spec {
    json raw;
    std::string kind;
    GroupProduct G;
    std::vector<std::vector<int>> relabels;
    std::optional<X1Spec> x1;
    std::optional<X2Spec> x2;
    std::optional<NormalForm> fixed;  // case0 / product files
    HomSpaceData hs;
    ColoredFan fan;
};

void allow_keys(const json& j, std::initializer_list<const char*> keys)
{
    for (auto& [k, v] : j.items()) {
        bool ok = false;
        for (auto* x : keys) ok = ok || k == x;
        if (!ok) bad("unknown key \"" + k + "\"");
    }
}

const json& need(const json& j, const char* key)
{
    if (!j.contains(key)) bad(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

std::string group_text(const json& g)
{
    if (g.is_string()) return g.get<std::string>();
    if (!g.is_array() || g.empty()) bad("group must be a string or a list of factors");
    std::string s;
    for (auto& f : g) {
        if (!f.is_string()) bad("group factors must be strings");
        s += (s.empty() ? "" : " x ") + f.get<std::string>();
    }
    return s;
}

RootId root(const Spec& s, const json& j)
{
    if (!j.is_string()) bad("roots are strings like \"(0,a3)\"");
    return parse_root(j.get<std::string>(), &s.G, &s.relabels);
}

std::vector<RootId> roots(const Spec& s, const json& j)
{
    if (!j.is_array()) bad("expected a list of roots");
    std::vector<RootId> out;
    for (auto& x : j) out.push_back(root(s, x));
    return out;
}

IVec ints(const json& j)
{
    if (!j.is_array()) bad("a must be a list of integers");
    IVec out;
    for (auto& x : j) {
        if (!x.is_number_integer()) bad("a must be a list of integers");
        out.push_back(x.get<long>());
    }
    return out;
}

Q rational(const json& j)
{
    if (j.is_number_integer()) return Q(j.get<long>());
    if (!j.is_string()) bad("rationals are integers or \"p/q\" strings");
    return parse_rational(j.get<std::string>());
}

PicardOne picard_one(const json& j)
{
    if (!j.is_object()) bad("product factors are objects");
    allow_keys(j, {"group", "roots"});
    Spec t;
    t.G = parse_group(group_text(need(j, "group")), &t.relabels);
    return PicardOne{t.G, roots(t, need(j, "roots"))};
}

Spec read_spec(const std::string& path)
{
    std::ifstream in(path);
    if (!in) bad("cannot read " + path);
    Spec s;
    try {
        s.raw = json::parse(in);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    auto& j = s.raw;
    if (!j.is_object()) bad("spec must be a JSON object");
    auto kind = need(j, "kind");
    if (!kind.is_string()) bad("kind must be a string");
    s.kind = kind.get<std::string>();
    if (s.kind == "x1") allow_keys(j, {"kind", "group", "beta", "alphas", "a", "rc"});
    else if (s.kind == "x2") allow_keys(j, {"kind", "group", "alphas", "a", "rc"});
    else if (s.kind == "fan") allow_keys(j, {"kind", "group", "R", "M_basis", "cones"});
    else if (s.kind == "case0") allow_keys(j, {"kind", "group", "roots"});
    else if (s.kind == "product") allow_keys(j, {"kind", "factors"});
    else bad("kind must be x1, x2, fan, case0 or product");

    if (s.kind == "product") {
        NormalForm f;
        auto& fs = need(j, "factors");
        if (!fs.is_array()) bad("factors must be a list");
        for (auto& x : fs) f.factors.push_back(picard_one(x));
        s.fixed = f;
        return s;
    }
    s.G = parse_group(group_text(need(j, "group")), &s.relabels);
    if (s.kind == "x1") {
        s.x1 = X1Spec{s.G, root(s, need(j, "beta")), roots(s, need(j, "alphas")), ints(need(j, "a"))};
        auto v = spec_violations(*s.x1);
        if (!v.empty()) bad("spec: " + v[0]);
        auto b = build_x1(*s.x1);
        s.hs = b.hs, s.fan = b.fan;
    } else if (s.kind == "x2") {
        s.x2 = X2Spec{s.G, roots(s, need(j, "alphas")), ints(need(j, "a"))};
        auto v = spec_violations(*s.x2);
        if (!v.empty()) bad("spec: " + v[0]);
        auto b = build_x2(*s.x2);
        s.hs = b.hs, s.fan = b.fan;
    } else if (s.kind == "case0") {
        auto r = roots(s, need(j, "roots"));
        NormalForm f;
        f.kind = NFKind::Case0;
        f.G = s.G;
        f.roots = r;
        s.fixed = f;
        s.hs = HomSpaceData{s.G, RootSet(r.begin(), r.end()), {}};
        s.fan.cones = {ColoredCone{}};
    } else {
        for (auto& x : roots(s, need(j, "R"))) s.hs.R.insert(x);
        s.hs.G = s.G;
        auto& m = need(j, "M_basis");
        if (!m.is_array()) bad("M_basis must be a list of weight vectors");
        for (auto& row : m) {
            if (!row.is_array()) bad("M_basis rows must be lists");
            QVec w;
            for (auto& x : row) w.push_back(rational(x));
            s.hs.M_basis.push_back(w);
        }
        check_hom_space(s.hs);
        std::vector<ColoredCone> cones;
        auto& cs = need(j, "cones");
        if (!cs.is_array()) bad("cones must be a list");
        for (auto& c : cs) {
            if (!c.is_object()) bad("cones are objects");
            allow_keys(c, {"generators", "colors"});
            ColoredCone cc;
            for (auto& g : need(c, "generators")) cc.generators.push_back(ints(g));
            if (c.contains("colors"))
                for (auto& x : roots(s, c.at("colors"))) cc.colors.insert(x);
            cones.push_back(cc);
        }
        s.fan = fan_from_cones(s.hs, cones);
    }
    return s;
}

// ---- output ----

json root_list(const std::vector<RootId>& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(to_string(x));
    return a;
}

json root_list(const RootSet& v) { return root_list(std::vector<RootId>(v.begin(), v.end())); }

json spec_json(const NormalForm& f)
{
    json j;
    switch (f.kind) {
    case NFKind::X1:
        j["kind"] = "x1";
        j["group"] = to_string(f.x1->G);
        j["beta"] = to_string(f.x1->beta);
        j["alphas"] = root_list(f.x1->alphas);
        j["a"] = f.x1->a;
        j["rc"] = to_string(f.rc);
        break;
    case NFKind::X2:
        j["kind"] = "x2";
        j["group"] = to_string(f.x2->G);
        j["alphas"] = root_list(f.x2->alphas);
        j["a"] = f.x2->a;
        j["rc"] = to_string(f.rc);
        break;
    case NFKind::Case0:
        j["kind"] = "case0";
        j["group"] = to_string(f.G);
        j["roots"] = root_list(f.roots);
        break;
    case NFKind::Product:
        j["kind"] = "product";
        j["factors"] = json::array();
        for (auto& p : f.factors) j["factors"].push_back({{"group", to_string(p.G)}, {"roots", root_list(p.roots)}});
        break;
    }
    return j;
}

void emit(const json& j, const std::string& path)
{
    std::string text = j.dump(2) + "\n";
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::optional<std::string> rc_text(const Spec& s)
{
    RCResult r;
    if (s.x1) r = check_rc1(*s.x1);
    else if (s.x2) r = check_rc2(*s.x2);
    else return std::nullopt;
    return r.ok() ? to_string(*r.tag) : "fail: " + r.reason;
}

// ---- check ----

int cmd_check(const std::string& file, const std::string& out)
{
    auto s = read_spec(file);
    if (s.kind == "product") {
        json j{{"kind", "product"}, {"picard_rank", s.fixed->factors.size()}, {"smooth", true}};
        emit(j, out);
        return OK;
    }
    json j;
    j["kind"] = s.kind;
    auto viol = validate_fan(s.hs, s.fan);
    j["valid"] = viol.empty();
    j["violations"] = json::array();
    for (auto& v : viol) j["violations"].push_back(to_string(v.clause) + " " + v.detail);
    bool pass = viol.empty();
    if (pass) {
        bool complete = is_complete(s.hs, s.fan), lf = is_locally_factorial(s.hs, s.fan);
        j["complete"] = complete;
        j["locally_factorial"] = lf;
        bool smooth = is_smooth_variety(s.hs, s.fan);
        j["smooth"] = smooth;
        pass = complete && lf;
        if (pass) {
            int rank = picard_rank(s.hs, s.fan);
            j["picard_rank"] = rank;
            auto c = case_detect(s.hs, s.fan);
            j["case"] = to_string(c.kind);
            if (c.kind == CaseKind::Case1 || c.kind == CaseKind::Case2) {
                auto P = case_prime_divisors(s.hs, s.fan, c);
                bool nef = verify_nef_generators(s.hs, s.fan, P.front(), P.back());
                j["nef_generators"] = nef;
                pass = pass && nef;
            }
            j["fano"] = is_fano(s.hs, s.fan);
        }
    }
    if (auto rc = rc_text(s)) j["rc"] = *rc;
    emit(j, out);
    return pass ? OK : FAILED;
}

// ---- mmp ----

struct Panel {
    Q eps;
    InequalitySystem sys;
    std::vector<QVec> verts;
};

double d(const Q& q) { return q.get_d(); }

std::string num(double x)
{
    std::ostringstream o;
    o.precision(4);
    o << std::fixed << x;
    return o.str();
}

// Qtilde panels with the moving walls dashed
std::string svg(const MMPFamily& fam, const MMPTrace& t)
{
    // interval samples and breakpoints, each once
    std::set<Q> at;
    for (auto& iv : t.intervals) at.insert(iv.lo_closed ? iv.lo : iv.sample());
    for (auto& ev : t.events) at.insert(ev.epsilon);
    int dim = int(fam.rows.dim());
    std::vector<Panel> panels;
    double lo[2] = {1e9, 1e9}, hi[2] = {-1e9, -1e9};
    for (auto& e : at) {
        Panel p{e, fam.at(e), {}};
        if (is_feasible(p.sys)) p.verts = vertices(p.sys);
        for (auto& v : p.verts)
            for (int k = 0; k < dim; ++k) lo[k] = std::min(lo[k], d(v[size_t(k)])), hi[k] = std::max(hi[k], d(v[size_t(k)]));
        panels.push_back(p);
    }
    if (dim == 1) lo[1] = -1, hi[1] = 1;
    for (int k = 0; k < 2; ++k) {
        if (lo[k] > hi[k]) lo[k] = 0, hi[k] = 1;
        double pad = std::max(0.5, (hi[k] - lo[k]) * 0.25);
        lo[k] -= pad, hi[k] += pad;
    }
    const double W = 200, H = 200, gap = 20;
    auto X = [&](double x) { return (x - lo[0]) / (hi[0] - lo[0]) * W; };
    auto Y = [&](double y) { return H - (y - lo[1]) / (hi[1] - lo[1]) * H; };
    std::ostringstream o;
    double total = double(panels.size()) * (W + gap);
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(total) << "\" height=\"" << num(H + 40)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    for (size_t i = 0; i < panels.size(); ++i) {
        auto& p = panels[i];
        o << "<g transform=\"translate(" << num(double(i) * (W + gap)) << ",0)\">\n";
        o << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"none\" stroke=\"#ccc\"/>\n";
        // moving walls A x = B + eps C
        for (size_t r = 0; r < fam.rows.rows(); ++r) {
            if (fam.C[r] == 0) continue;
            double a0 = d(fam.rows.A[r][0]), a1 = dim > 1 ? d(fam.rows.A[r][1]) : 0, c = d(fam.B[r] + p.eps * fam.C[r]);
            std::vector<std::pair<double, double>> pts;
            auto keep = [&](double x, double y) {
                if (x >= lo[0] - 1e-9 && x <= hi[0] + 1e-9 && y >= lo[1] - 1e-9 && y <= hi[1] + 1e-9) pts.push_back({x, y});
            };
            if (std::abs(a1) > 1e-12) {
                keep(lo[0], (c - a0 * lo[0]) / a1);
                keep(hi[0], (c - a0 * hi[0]) / a1);
            }
            if (std::abs(a0) > 1e-12) {
                keep((c - a1 * lo[1]) / a0, lo[1]);
                keep((c - a1 * hi[1]) / a0, hi[1]);
            }
            if (pts.size() >= 2)
                o << "<line x1=\"" << num(X(pts[0].first)) << "\" y1=\"" << num(Y(pts[0].second)) << "\" x2=\""
                  << num(X(pts.back().first)) << "\" y2=\"" << num(Y(pts.back().second))
                  << "\" stroke=\"#555\" stroke-dasharray=\"3,3\"/>\n";
        }
        // the polytope: point, segment or polygon
        std::vector<std::pair<double, double>> v;
        for (auto& x : p.verts) v.push_back({d(x[0]), dim > 1 ? d(x[1]) : 0.0});
        if (v.size() == 1) {
            o << "<circle cx=\"" << num(X(v[0].first)) << "\" cy=\"" << num(Y(v[0].second)) << "\" r=\"3\"/>\n";
        } else if (v.size() > 1) {
            double cx = 0, cy = 0;
            for (auto& [x, y] : v) cx += x, cy += y;
            cx /= double(v.size()), cy /= double(v.size());
            std::sort(v.begin(), v.end(), [&](auto& a, auto& b) {
                return std::atan2(a.second - cy, a.first - cx) < std::atan2(b.second - cy, b.first - cx);
            });
            o << "<polygon points=\"";
            for (auto& [x, y] : v) o << num(X(x)) << "," << num(Y(y)) << " ";
            o << "\" fill=\"#9bd\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        o << "<text x=\"" << W / 2 << "\" y=\"" << H + 25 << "\" text-anchor=\"middle\">eps = " << to_string(p.eps)
          << "</text>\n</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

int cmd_mmp(const std::string& file, const std::string& delta, const std::string& svg_out, const std::string& out)
{
    auto s = read_spec(file);
    if (s.fixed) throw Error(ErrorCode::PreconditionViolated, "no Log MMP for a " + s.kind + " file");
    if (!is_smooth_variety(s.hs, s.fan)) throw Error(ErrorCode::NotSmooth, "the variety is not smooth");
    int rank = picard_rank(s.hs, s.fan);
    if (rank != 2) throw Error(ErrorCode::PreconditionViolated, "Picard rank " + std::to_string(rank));
    auto fam = canonical_family(s.hs, s.fan, delta == "d0" ? CanonicalChoice::First : CanonicalChoice::Second);
    auto t = run_log_mmp(fam);

    json j;
    j["input"] = s.raw;
    j["delta"] = delta;
    j["picard_rank"] = rank;
    j["smooth"] = true;
    if (auto rc = rc_text(s)) j["rc"] = *rc;
    j["eps_max"] = to_string(t.eps_max);
    j["breakpoints"] = json::array();
    for (auto& ev : t.events) {
        json b{{"epsilon", to_string(ev.epsilon)}, {"kind", to_string(ev.kind)}, {"pruned_rows", ev.pruned_rows}};
        if (ev.fiber)
            b["fiber"] = {{"general_dim", ev.fiber->general_dim},
                          {"rank_drop", ev.fiber->rank_drop},
                          {"source_R", root_list(ev.fiber->source_R)},
                          {"target_R", root_list(ev.fiber->target_R)}};
        else
            b["fiber"] = nullptr;
        j["breakpoints"].push_back(b);
    }
    j["intervals"] = json::array();
    for (size_t i = 0; i < t.intervals.size(); ++i) {
        auto& iv = t.intervals[i];
        json x{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
        if (i < t.signatures.size()) x["num_faces"] = t.signatures[i].faces.size();
        j["intervals"].push_back(x);
    }
    if (!svg_out.empty()) {
        if (fam.rows.dim() > 2) throw Error(ErrorCode::PreconditionViolated, "figures need rank at most 2");
        std::ofstream f(svg_out);
        if (!f) throw std::runtime_error("cannot write " + svg_out);
        f << svg(fam, t);
    }
    emit(j, out);
    return OK;
}

// ---- appendix ----

int cmd_appendix(const std::string& family, int max_rank, const std::string& out)
{
    const std::string letters = "ABCDEFG";
    std::vector<std::pair<char, int>> types;
    for (char f : family == "all" ? letters : family) {
        if (letters.find(f) == std::string::npos) bad("unknown family " + std::string(1, f));
        int lo = f == 'B' ? 3 : f == 'C' ? 2 : f == 'D' ? 4 : f == 'E' ? 6 : 1;
        int hi = f == 'E' ? std::min(8, max_rank) : max_rank;
        if (f == 'F') lo = hi = 4;
        if (f == 'G') lo = hi = 2;
        for (int m = lo; m <= hi; ++m) types.push_back({f, m});
    }
    json j = json::array();
    int unexplained = 0;
    for (auto [f, m] : types) {
        auto k = make_factor(Family(letters.find(f)), m).factor;
        for (bool one : {true, false}) {
            std::vector<std::pair<int, std::set<int>>> got;
            json rows = json::array();
            for (auto& e : enumerate_smooth_quadruples(k, one ? NFlag::One : NFlag::AtLeastTwo)) {
                got.push_back({e.beta, e.r});
                rows.push_back({{"beta", e.beta}, {"R", e.r}});
            }
            auto diff = fixture::compare(f, m, one, got);
            json mism = json::array();
            for (auto& x : diff) {
                mism.push_back({{"beta", x.entry.beta},
                                {"R", x.entry.r},
                                {"side", x.enumerator_only ? "enumerator" : "printed"},
                                {"known_slip", x.slip}});
                if (x.slip.empty()) ++unexplained;
            }
            std::string name = std::string(1, f) + std::to_string(m);
            std::cout << name << (one ? " n=1   " : " n>=2  ") << got.size() << " entries, " << diff.size()
                      << " differences\n";
            for (auto& x : diff)
                std::cout << "  " << (x.enumerator_only ? "+ " : "- ") << "beta=" << x.entry.beta << " R="
                          << json(x.entry.r).dump() << "  " << (x.slip.empty() ? "UNEXPLAINED" : x.slip) << "\n";
            j.push_back({{"type", name}, {"n", one ? "1" : ">=2"}, {"entries", rows}, {"differences", mism}});
        }
    }
    if (!out.empty()) emit(j, out);
    return unexplained ? FAILED : OK;
}

// ---- normalize ----

int cmd_normalize(const std::string& file, const std::string& out, bool trace)
{
    auto s = read_spec(file);
    NormalForm f;
    std::vector<RewriteStep> steps;
    if (s.fixed) {
        f = *s.fixed;
    } else {
        auto n = s.x1 ? normalize_traced(*s.x1) : s.x2 ? normalize_traced(*s.x2) : throw Error(ErrorCode::PreconditionViolated, "normalize needs an x1 or x2 file");
        f = n.result;
        steps = n.steps;
    }
    if (trace)
        for (auto& st : steps)
            std::cerr << to_string(st.rule) << ": " << st.before << " -> " << st.after << " (dim " << st.dim_after << ")\n";
    emit(spec_json(f), out);
    return OK;
}

int run(int argc, char** argv)
{
    CLI::App app{"horospherical varieties of Picard rank two"};
    app.require_subcommand(1);
    std::string file, out, delta = "dn1", svg_out, family = "all";
    int max_rank = 8;
    bool trace = false;

    auto* check = app.add_subcommand("check", "smoothness, Picard rank, nef cone and Fano checks");
    check->add_option("file", file, "spec file (JSON)")->required();
    check->add_option("--json", out, "write the report here instead of stdout");

    auto* mmp = app.add_subcommand("mmp", "run the Log MMP with D = D_0 + D_{n+1}");
    mmp->add_option("file", file, "spec file (JSON)")->required();
    mmp->add_option("--delta", delta, "d0 or dn1")->check(CLI::IsMember({"d0", "dn1"}));
    mmp->add_option("--svg", svg_out, "write the polytope panels as SVG");
    mmp->add_option("--json", out, "write the trace here instead of stdout");

    auto* app_cmd = app.add_subcommand("appendix", "enumerate smooth quadruples and diff against the printed list");
    app_cmd->add_option("--family", family, "A..G, several letters, or all");
    app_cmd->add_option("--max-rank", max_rank, "largest rank")->check(CLI::Range(1, 12));
    app_cmd->add_option("--json", out, "write the table as JSON");

    auto* norm = app.add_subcommand("normalize", "rewrite an x1/x2 spec into its normal form");
    norm->add_option("file", file, "spec file (JSON)")->required();
    norm->add_option("--json", out, "write the normal form here instead of stdout");
    norm->add_flag("--trace", trace, "print the rewrite steps on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? OK : BAD_INPUT;
    }
    try {
        if (*check) return cmd_check(file, out);
        if (*mmp) return cmd_mmp(file, delta, svg_out, out);
        if (*app_cmd) return cmd_appendix(family, max_rank, out);
        if (*norm) return cmd_normalize(file, out, trace);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return BAD_INPUT;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        bool input = e.code == ErrorCode::ParseError || e.code == ErrorCode::InputError ||
                     e.code == ErrorCode::UnknownFamily || e.code == ErrorCode::InvalidRank ||
                     e.code == ErrorCode::SpecInvariantViolated;
        return input ? BAD_INPUT : FAILED;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return FAILED;
    }
    return OK;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
