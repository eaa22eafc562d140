#include "pdcover/separator/separator.h"

#include "pdcover/geom/arrangement.h"
#include "pdcover/geom/errors.h"
#include "pdcover/geom/random.h"
#include "pdcover/partition/cycle_separator.h"
#include "pdcover/partition/subdivision.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pdc {

namespace {

int max_alpha(const std::vector<Region>& regions) {
    int a = 1;
    for (const auto& r : regions) a = std::max(a, r.alpha);
    return a;
}

long ceil_of(const Scalar& q) {
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return z.get_si();
}

/// Side weights by classify; unit weights when `unit`.
void evaluate(SeparatorReport& rep, const std::vector<Region>& regions, bool unit) {
    rep.sides = classify(rep.curve, regions);
    auto w = [&](int i) { return unit ? Scalar(1) : regions[i].weight; };
    rep.inside_weight = rep.outside_weight = rep.crossing_weight = 0;
    for (int i : rep.sides.inside) rep.inside_weight += w(i);
    for (int i : rep.sides.outside) rep.outside_weight += w(i);
    for (int i : rep.sides.crossing) rep.crossing_weight += w(i);
}

bool sides_balanced(const SeparatorReport& rep) {
    return 3 * rep.inside_weight <= 2 * rep.total && 3 * rep.outside_weight <= 2 * rep.total;
}

}  // namespace

SideClassification classify(const SeparatorCurve& curve, const std::vector<Region>& regions,
                            const std::vector<Point2>& points) {
    SideClassification s;
    const BBox cb = bbox_of(curve.geometry);
    for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
        if (!bbox_overlap(cb, bbox_of(regions[i].boundary))) {
            s.outside.push_back(i);
            continue;
        }
        PolyRelation rel = relate(regions[i].boundary, curve.geometry);
        if (rel.int_int && rel.a_in_b_ext)
            s.crossing.push_back(i);
        else if (rel.int_int)
            s.inside.push_back(i);
        else
            s.outside.push_back(i);
    }
    for (int i = 0; i < static_cast<int>(points.size()); ++i) {
        Location l = locate(points[i], curve.geometry);
        if (l != Location::Outside) s.inside_points.push_back(i);
        if (l != Location::Inside) s.outside_points.push_back(i);
    }
    return s;
}

SeparatorReport weighted_region_separator(const std::vector<Region>& regions, const Scalar& delta,
                                          const SeparatorConfig& cfg) {
    if (regions.empty()) throw Error(ErrorKind::InvalidInput, "no regions");
    if (delta <= 0 || delta >= 1) throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
    Scalar total = 0;
    for (const auto& r : regions) total += r.weight;
    if (total <= 0) throw Error(ErrorKind::InvalidInput, "total weight must be positive");
    for (const auto& r : regions)
        if (3 * r.weight > total) throw Error(ErrorKind::Unbalanced, "a region outweighs W/3");

    const int alpha = max_alpha(regions);
    long r = ceil_of(Scalar(alpha * alpha) / (delta * delta));
    const CurveSet set = curves_of_regions(regions, true);
    for (int attempt = 0; attempt <= cfg.max_doublings; ++attempt, r *= 2) {
        SeparatorReport rep;
        rep.total = total;
        rep.r = r;
        rep.attempts = attempt + 1;
        rep.alpha = alpha;
        rep.complexity_envelope = alpha / delta.get_d();
        try {
            Partition part = sample_partition(set, r, mix_seed(cfg.seed, attempt), cfg.sample);
            SubdivisionGraph sg = subdivision_graph(part, regions, true);
            CycleSeparator cs = cycle_separator(sg.graph, sg.face_weights);
            rep.curve = curve_from_cycle(regions, set, sg.graph, cs.half_edges);
            rep.cells = static_cast<int>(part.cells.size());
            rep.cycle_length = static_cast<int>(cs.vertices.size());
            rep.c_sep = cs.c_sep;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Unbalanced || e.kind() == ErrorKind::SamplingFailed) continue;
            throw;
        }
        evaluate(rep, regions, false);
        if (rep.crossing_weight <= delta * total && sides_balanced(rep)) return rep;
    }
    throw Error(ErrorKind::SamplingFailed, "no balanced separator within the doubling limit");
}

SeparatorReport intersecting_region_separator(const std::vector<Region>& regions, long r,
                                              const SeparatorConfig& cfg) {
    if (regions.empty()) throw Error(ErrorKind::InvalidInput, "no regions");
    if (r < 1) throw Error(ErrorKind::InvalidInput, "r must be at least 1");
    const int n = static_cast<int>(regions.size());
    CurveSet set = curves_of_regions(regions, false);
    std::fill(set.weights.begin(), set.weights.end(), Scalar(1));

    long m = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (bbox_overlap(bbox_of(regions[i].boundary), bbox_of(regions[j].boundary)))
                m += static_cast<long>(boundary_intersections(regions[i], regions[j]).size());
    const int alpha = max_alpha(regions);
    const double a2n2 = static_cast<double>(alpha) * alpha * n * n;

    for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
        Partition part = sample_partition(set, r, mix_seed(cfg.seed, attempt), cfg.sample);
        SubdivisionGraph sg = subdivision_graph(part, regions, false);
        const PlanarGraph& g = sg.graph;

        SeparatorReport base;
        base.total = n;
        base.r = r;
        base.attempts = attempt + 1;
        base.alpha = alpha;
        base.cells = static_cast<int>(part.cells.size());
        base.crossings_m = m;
        base.crossing_envelope = std::sqrt(static_cast<double>(m) + a2n2 / static_cast<double>(r));
        base.complexity_envelope =
            std::sqrt(static_cast<double>(r) + static_cast<double>(m) * r * r / a2n2);

        std::vector<std::vector<int>> cycles;
        try {
            CycleSeparator cs = cycle_separator(g, sg.face_weights);
            base.c_sep = cs.c_sep;
            cycles.push_back(cs.half_edges);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Unbalanced) throw;
            // A face carries more than a third of the regions: try face
            // boundaries, heaviest first.
            std::vector<int> order;
            for (int h : g.face_starts())
                if (g.face[h] != g.outer_face) order.push_back(h);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return sg.face_weights[g.face[a]] > sg.face_weights[g.face[b]];
            });
            for (int h : order) cycles.push_back(g.face_walk(h));
        }
        std::optional<SeparatorReport> best;
        for (const auto& cyc : cycles) {
            SeparatorReport rep = base;
            try {
                rep.curve = curve_from_cycle(regions, set, g, cyc);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Degenerate || e.kind() == ErrorKind::MalformedEncoding) continue;
                throw;
            }
            rep.cycle_length = static_cast<int>(cyc.size());
            evaluate(rep, regions, true);
            if (!sides_balanced(rep)) continue;
            if (!best || rep.crossing_weight < best->crossing_weight) best = std::move(rep);
            if (cycles.size() == 1) break;
        }
        if (best) return *best;
    }
    throw Error(ErrorKind::SamplingFailed, "no balanced separator after reseeding");
}

std::vector<Region> lower_bound_instance(const Scalar& delta, int c, int copies) {
    if (delta <= 0 || c <= 0 || copies <= 0)
        throw Error(ErrorKind::SpecInvalid, "lower-bound instance needs delta > 0, c > 0, copies > 0");
    Scalar kq = Scalar(c) / delta;
    kq.canonicalize();
    if (kq.get_den() != 1 || kq < 3) throw Error(ErrorKind::SpecInvalid, "c/delta must be an integer >= 3");
    const int k = static_cast<int>(kq.get_num().get_si());
    constexpr long grid = 16384;
    // Successive copies shrink by less than cos(pi/k) so that a curve
    // squeezed between two copies must turn at every corner.
    const double shrink = 1.0 - (1.0 - std::cos(std::numbers::pi / k)) / 2.0;
    const double theta = 0.1;
    std::vector<Region> out;
    double radius = 45.0;
    for (int t = 0; t < copies; ++t, radius *= shrink) {
        for (int i = 0; i < k; ++i) {
            double a0 = theta + 2 * std::numbers::pi * i / k;
            double a1 = theta + 2 * std::numbers::pi * (i + 1) / k;
            double x0 = 50 + radius * std::cos(a0), y0 = 50 + radius * std::sin(a0);
            double x1 = 50 + radius * std::cos(a1), y1 = 50 + radius * std::sin(a1);
            const double cut = 0.02;
            Point2 p{snap(x0 + cut * (x1 - x0), grid), snap(y0 + cut * (y1 - y0), grid)};
            Point2 q{snap(x1 - cut * (x1 - x0), grid), snap(y1 - cut * (y1 - y0), grid)};
            if (p.x == q.x) throw Error(ErrorKind::SpecInvalid, "vertical polygon side");
            if (q.x < p.x) std::swap(p, q);
            out.push_back(make_region(static_cast<int>(out.size()), 1,
                                      thin_segment_polygon(p, q, Scalar(1, 4 * grid))));
        }
    }
    return out;
}

}  // namespace pdc
