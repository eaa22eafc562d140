#include "pdcover/halfspace3d/halfspace.h"

#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/halfspace3d/lp.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace pdc {

namespace {

using nlohmann::json;

Scalar scalar_from(const json& j) {
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(j.get<long>());
    if (j.is_number_float()) return parse_scalar(j.dump());
    throw Error(ErrorKind::InvalidInput, "expected a number, got " + j.dump());
}

Point3 point3_from(const json& j) {
    if (!j.is_array() || j.size() != 3)
        throw Error(ErrorKind::InvalidInput, "expected [x, y, z], got " + j.dump());
    return {scalar_from(j[0]), scalar_from(j[1]), scalar_from(j[2])};
}

json point3_json(const Point3& p) {
    return json::array({format_scalar(p.x), format_scalar(p.y), format_scalar(p.z)});
}

Scalar det3(const Point3& a, const Point3& b, const Point3& c) { return dot(a, cross(b, c)); }

/// Intersection of three planes, nullopt when the normals are dependent.
/// Also returns the dual basis d_a with <n_b, d_a> = [a == b].
std::optional<Point3> meet(const Halfspace3& a, const Halfspace3& b, const Halfspace3& c,
                           Point3* dual = nullptr) {
    Scalar d = det3(a.normal, b.normal, c.normal);
    if (d == 0) return std::nullopt;
    Point3 da = Scalar(1 / d) * cross(b.normal, c.normal);
    Point3 db = Scalar(1 / d) * cross(c.normal, a.normal);
    Point3 dc = Scalar(1 / d) * cross(a.normal, b.normal);
    if (dual) {
        dual[0] = da;
        dual[1] = db;
        dual[2] = dc;
    }
    return a.offset * da + (b.offset * db + c.offset * dc);
}

Scalar abs_scalar(const Scalar& s) { return s < 0 ? Scalar(-s) : s; }

/// Realizability of a sign pattern in the cone of directions at a vertex:
/// inside[i] asks <n_i, d> > 0, otherwise < 0 (strict either way).
std::optional<Point3> direction_for(const std::vector<Halfspace3>& hs, const std::vector<int>& planes,
                                    const std::vector<char>& inside) {
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> b;
    for (std::size_t k = 0; k < planes.size(); ++k) {
        const Point3& n = hs[planes[k]].normal;
        Scalar s = inside[k] ? -1 : 1;
        a.push_back({s * n.x, s * n.y, s * n.z});
        b.push_back(0);
    }
    auto x = strictly_feasible(a, b, std::vector<char>(a.size(), 1), 3);
    if (!x) return std::nullopt;
    return Point3{(*x)[0], (*x)[1], (*x)[2]};
}

/// Largest step along d from v that crosses no plane outside `on`.
Scalar safe_step(const std::vector<Halfspace3>& hs, const Point3& v, const Point3& d,
                 const std::vector<char>& on) {
    Scalar eta = 1;
    for (std::size_t h = 0; h < hs.size(); ++h) {
        if (on[h]) continue;
        Scalar rate = abs_scalar(dot(hs[h].normal, d));
        if (rate == 0) continue;
        Scalar lim = abs_scalar(hs[h].side(v)) / (2 * rate);
        if (lim < eta) eta = lim;
    }
    return eta;
}

bool normals_span(const std::vector<Halfspace3>& hs) {
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            Point3 c = cross(hs[i].normal, hs[j].normal);
            if (c == Point3{0, 0, 0}) continue;
            for (std::size_t k = j + 1; k < hs.size(); ++k)
                if (dot(c, hs[k].normal) != 0) return true;
        }
    return false;
}

template <class Visit>
void for_each_vertex(const std::vector<Halfspace3>& hs, Visit&& visit) {
    std::set<Point3> seen;
    const std::size_t n = hs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                Point3 dual[3];
                auto v = meet(hs[i], hs[j], hs[k], dual);
                if (!v || !seen.insert(*v).second) continue;
                std::vector<char> on(n, 0);
                std::vector<int> planes;
                for (std::size_t h = 0; h < n; ++h)
                    if (hs[h].side(*v) == 0) {
                        on[h] = 1;
                        planes.push_back(static_cast<int>(h));
                    }
                visit(*v, planes, on, planes.size() == 3 ? dual : nullptr,
                      std::array<int, 3>{int(i), int(j), int(k)});
            }
}

std::vector<int> containment(const std::vector<Halfspace3>& hs, const Point3& p) {
    std::vector<int> out;
    for (std::size_t h = 0; h < hs.size(); ++h)
        if (hs[h].contains(p)) out.push_back(static_cast<int>(h));
    return out;
}

}  // namespace

Point3 operator+(const Point3& a, const Point3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Point3 operator-(const Point3& a, const Point3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Point3 operator*(const Scalar& s, const Point3& a) { return {s * a.x, s * a.y, s * a.z}; }
Scalar dot(const Point3& a, const Point3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Point3 cross(const Point3& a, const Point3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Halfspace3 make_halfspace(int id, const Point3& normal, const Scalar& offset, const Scalar& weight) {
    if (normal == Point3{0, 0, 0}) throw Error(ErrorKind::InvalidInput, "zero halfspace normal");
    if (weight < 0) throw Error(ErrorKind::InvalidInput, "negative halfspace weight");
    Halfspace3 h;
    h.normal = normal;
    h.offset = offset;
    h.weight = weight;
    h.id = id;
    return h;
}

HalfspaceInstance parse_halfspace_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidInput, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::InvalidInput, "expected an object");
    HalfspaceInstance inst;
    if (doc.contains("halfspaces"))
        for (const auto& h : doc.at("halfspaces")) {
            if (!h.contains("normal") || !h.contains("offset"))
                throw Error(ErrorKind::InvalidInput, "halfspace needs normal and offset");
            Scalar w = h.contains("weight") ? scalar_from(h.at("weight")) : Scalar(1);
            inst.halfspaces.push_back(make_halfspace(static_cast<int>(inst.halfspaces.size()),
                                                     point3_from(h.at("normal")),
                                                     scalar_from(h.at("offset")), w));
        }
    if (doc.contains("points"))
        for (const auto& p : doc.at("points")) inst.points.push_back(point3_from(p));
    return inst;
}

std::string write_halfspace_instance(const HalfspaceInstance& inst) {
    json doc = json::object();
    json hs = json::array();
    for (const auto& h : inst.halfspaces)
        hs.push_back({{"normal", point3_json(h.normal)},
                      {"offset", format_scalar(h.offset)},
                      {"weight", format_scalar(h.weight)}});
    json pts = json::array();
    for (const auto& p : inst.points) pts.push_back(point3_json(p));
    doc["halfspaces"] = hs;
    doc["points"] = pts;
    return doc.dump(1) + "\n";
}

std::vector<std::vector<int>> halfspace_coverage(const HalfspaceInstance& inst) {
    std::vector<std::vector<int>> cov(inst.points.size());
    for (std::size_t p = 0; p < inst.points.size(); ++p) {
        cov[p] = containment(inst.halfspaces, inst.points[p]);
        if (cov[p].empty()) throw Error(ErrorKind::Infeasible, "uncovered point");
    }
    return cov;
}

std::vector<int> stab_set(const std::vector<Halfspace3>& hs, const Point3& o, const Point3& x) {
    std::vector<int> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        // A sign change or a zero at either end; a segment inside the plane counts.
        if (sign(hs[i].side(o)) * sign(hs[i].side(x)) <= 0) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::optional<Point3> point_outside(const std::vector<Halfspace3>& hs, const std::vector<int>& selected) {
    std::vector<std::vector<Scalar>> a;
    std::vector<Scalar> b;
    for (int i : selected) {
        a.push_back({hs[i].normal.x, hs[i].normal.y, hs[i].normal.z});
        b.push_back(hs[i].offset);
    }
    auto x = strictly_feasible(a, b, std::vector<char>(a.size(), 1), 3);
    if (!x) return std::nullopt;
    return Point3{(*x)[0], (*x)[1], (*x)[2]};
}

bool covers_space(const std::vector<Halfspace3>& hs, const std::vector<int>& selected) {
    return !point_outside(hs, selected).has_value();
}

std::optional<HellyCover> helly_small_cover(const std::vector<Halfspace3>& hs) {
    const int n = static_cast<int>(hs.size());
    std::optional<HellyCover> best;
    int checked = 0;
    std::vector<int> tuple;
    auto rec = [&](auto&& self, int from, const Scalar& w) -> void {
        if (!tuple.empty()) {
            if (best && w >= best->weight) return;
            ++checked;
            if (tuple.size() >= 2 && covers_space(hs, tuple)) {
                best = HellyCover{tuple, w, 0};
                return;  // supersets only weigh more
            }
        }
        if (tuple.size() == 4) return;
        for (int i = from; i < n; ++i) {
            tuple.push_back(i);
            self(self, i + 1, w + hs[i].weight);
            tuple.pop_back();
        }
    };
    rec(rec, 0, Scalar(0));
    if (best) best->tuples_checked = checked;
    return best;
}

std::vector<std::vector<int>> realized_sets(const std::vector<Halfspace3>& hs,
                                            const std::vector<int>& subset) {
    const int k = static_cast<int>(subset.size());
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << k); ++mask) {
        std::vector<std::vector<Scalar>> a;
        std::vector<Scalar> b;
        std::vector<char> strict;
        std::vector<int> in;
        for (int t = 0; t < k; ++t) {
            const Halfspace3& h = hs[subset[t]];
            if (mask >> t & 1) {
                in.push_back(subset[t]);
                a.push_back({-h.normal.x, -h.normal.y, -h.normal.z});
                b.push_back(-h.offset);
                strict.push_back(0);
            } else {
                a.push_back({h.normal.x, h.normal.y, h.normal.z});
                b.push_back(h.offset);
                strict.push_back(1);
            }
        }
        if (strictly_feasible(a, b, strict, 3)) out.push_back(std::move(in));
    }
    return out;
}

VcReport vc_shatter_check(const std::vector<Halfspace3>& hs, int cap) {
    const int n = static_cast<int>(hs.size());
    if (n > cap) throw Error(ErrorKind::TooLarge, "shatter check above the halfspace cap");
    VcReport rep;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int from) -> void {
        if (!subset.empty()) {
            ++rep.subsets_checked;
            int count = static_cast<int>(realized_sets(hs, subset).size());
            const int k = static_cast<int>(subset.size());
            if (count == (1 << k)) rep.max_shattered = std::max(rep.max_shattered, k);
            if (k == 4) rep.max_realized_k4 = std::max(rep.max_realized_k4, count);
        }
        if (subset.size() == 4) return;
        for (int i = from; i < n; ++i) {
            subset.push_back(i);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
    return rep;
}

std::vector<Point3> cell_representatives(const std::vector<Halfspace3>& hs) {
    std::map<std::vector<int>, Point3> cells;
    auto add = [&](const Point3& p) { cells.emplace(containment(hs, p), p); };
    if (!normals_span(hs)) {
        if (hs.size() > 12) throw Error(ErrorKind::Degenerate, "halfspace normals do not span space");
        std::vector<int> all(hs.size());
        for (std::size_t i = 0; i < hs.size(); ++i) all[i] = static_cast<int>(i);
        std::vector<char> pattern(hs.size());
        for (int mask = 0; mask < (1 << hs.size()); ++mask) {
            std::vector<std::vector<Scalar>> a;
            std::vector<Scalar> b;
            for (std::size_t t = 0; t < hs.size(); ++t) {
                Scalar s = (mask >> t & 1) ? -1 : 1;
                a.push_back({s * hs[t].normal.x, s * hs[t].normal.y, s * hs[t].normal.z});
                b.push_back(s * hs[t].offset);
            }
            if (auto x = strictly_feasible(a, b, std::vector<char>(a.size(), 1), 3))
                add(Point3{(*x)[0], (*x)[1], (*x)[2]});
        }
        if (hs.empty()) add(Point3{0, 0, 0});
        std::vector<Point3> out;
        for (auto& [k, p] : cells) out.push_back(p);
        return out;
    }
    for_each_vertex(hs, [&](const Point3& v, const std::vector<int>& planes, const std::vector<char>& on,
                            const Point3* dual, std::array<int, 3> tri) {
        const int k = static_cast<int>(planes.size());
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::optional<Point3> d;
            if (dual) {
                Point3 sum{0, 0, 0};
                for (int a = 0; a < 3; ++a) {
                    int pos = static_cast<int>(std::find(planes.begin(), planes.end(), tri[a]) - planes.begin());
                    Scalar s = (mask >> pos & 1) ? 1 : -1;
                    sum = sum + s * dual[a];
                }
                d = sum;
            } else {
                std::vector<char> inside(k);
                for (int t = 0; t < k; ++t) inside[t] = (mask >> t & 1) ? 1 : 0;
                d = direction_for(hs, planes, inside);
            }
            if (!d) continue;
            add(v + safe_step(hs, v, *d, on) * *d);
        }
    });
    std::vector<Point3> out;
    for (auto& [k, p] : cells) out.push_back(p);
    return out;
}

std::vector<std::vector<int>> canonical_ranges(const std::vector<Halfspace3>& hs) {
    std::set<std::vector<int>> ranges;
    for (const Point3& p : cell_representatives(hs)) ranges.insert(containment(hs, p));
    if (normals_span(hs))
        for_each_vertex(hs, [&](const Point3& v, const std::vector<int>&, const std::vector<char>&,
                                const Point3*, std::array<int, 3>) { ranges.insert(containment(hs, v)); });
    return {ranges.begin(), ranges.end()};
}

std::vector<Halfspace3> dummy_halfspaces(const Scalar& bound, int first_id) {
    const Point3 normals[4] = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    std::vector<Halfspace3> out;
    for (int i = 0; i < 4; ++i) {
        Halfspace3 h = make_halfspace(first_id + i, normals[i], 3 * bound + 1, 0);
        h.dummy = true;
        out.push_back(h);
    }
    return out;
}

Scalar geometry_bound(const std::vector<Halfspace3>& hs, const std::vector<Point3>& points) {
    Scalar b = 1;
    auto take = [&](const Point3& p) {
        for (const Scalar* c : {&p.x, &p.y, &p.z}) b = std::max(b, abs_scalar(*c));
    };
    for (const auto& p : points) take(p);
    const std::size_t n = hs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (auto v = meet(hs[i], hs[j], hs[k])) take(*v);
    return b;
}

EpsilonNet epsilon_net_stab(const std::vector<Halfspace3>& hs, const Point3& o, const Scalar& eps,
                            std::uint64_t seed, const NetConfig& cfg,
                            const std::vector<Point3>& extra_points) {
    if (eps <= 0 || eps > 1) throw Error(ErrorKind::InvalidInput, "net eps must lie in (0, 1]");
    for (const auto& h : hs)
        if (h.side(o) >= 0) throw Error(ErrorKind::ApexInside, "apex inside a halfspace");
    EpsilonNet net;
    Scalar total = 0;
    for (const auto& h : hs) total += h.weight;
    const double e = to_double(eps);
    net.sample_size = e >= 1 ? 0 : static_cast<int>(std::ceil(cfg.c_net / e * std::log(1 / e)));

    // With o outside everything, the stabbing range of x is the set of
    // halfspaces containing x; those of weight >= eps W must be hit.
    std::vector<std::vector<int>> heavy;
    if (total > 0)
        for (auto& r : canonical_ranges(hs)) {
            ++net.ranges_checked;
            Scalar w = 0;
            for (int i : r) w += hs[i].weight;
            if (w >= eps * total) heavy.push_back(std::move(r));
        }
    net.heavy_ranges = static_cast<int>(heavy.size());

    std::vector<double> cum;
    double acc = 0;
    for (const auto& h : hs) cum.push_back(acc += to_double(h.weight));
    bool ok = false;
    for (int attempt = 0; attempt < cfg.max_attempts && !ok; ++attempt) {
        ++net.attempts;
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<char> in(hs.size(), 0);
        if (acc > 0)
            for (int s = 0; s < net.sample_size; ++s) {
                double u = rng.uniform() * acc;
                auto it = std::upper_bound(cum.begin(), cum.end(), u);
                in[std::min<std::size_t>(it - cum.begin(), hs.size() - 1)] = 1;
            }
        ok = std::all_of(heavy.begin(), heavy.end(), [&](const std::vector<int>& r) {
            return std::any_of(r.begin(), r.end(), [&](int i) { return in[i] != 0; });
        });
        if (ok) {
            net.members.clear();
            for (std::size_t i = 0; i < hs.size(); ++i)
                if (in[i]) net.members.push_back(static_cast<int>(i));
        }
    }
    if (!ok) throw Error(ErrorKind::NetValidationFailed, "no sample hit every heavy range");
    std::vector<Point3> pts = extra_points;
    pts.push_back(o);
    net.dummies = dummy_halfspaces(geometry_bound(hs, pts), static_cast<int>(hs.size()));
    return net;
}

}  // namespace pdc
