#include "pdcover/separator/encoding.h"

#include "pdcover/geom/errors.h"

#include <algorithm>
#include <optional>
#include <sstream>

namespace pdc {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::MalformedEncoding, what); }

Scalar y_on(const std::vector<Point2>& v, const Scalar& x) {
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        if (v[k].x <= x && x <= v[k + 1].x) return y_at(v[k], v[k + 1], x);
    malformed("abscissa outside the piece");
}

std::vector<Point2> run_points(const std::vector<Region>& regions, const BBox& frame,
                               const PieceRef& ref) {
    std::vector<Point2> v;
    if (ref.region == kFrameRegion) {
        if (ref.piece != 0 && ref.piece != 1) malformed("frame piece must be 0 or 1");
        Scalar y = ref.piece == 0 ? frame.ymin : frame.ymax;
        v = {{frame.xmin, y}, {frame.xmax, y}};
    } else {
        if (ref.region < 0 || ref.region >= static_cast<int>(regions.size()))
            malformed("dangling region reference");
        const auto& pieces = regions[ref.region].monotone_pieces;
        if (ref.piece < 0 || ref.piece >= static_cast<int>(pieces.size()))
            malformed("dangling piece reference");
        v = pieces[ref.piece].vertices;
    }
    if (ref.x_from == ref.x_to) malformed("empty piece range");
    Scalar lo = std::min(ref.x_from, ref.x_to), hi = std::max(ref.x_from, ref.x_to);
    if (lo < v.front().x || hi > v.back().x) malformed("range outside the piece");
    std::vector<Point2> out{{lo, y_on(v, lo)}};
    for (const auto& p : v)
        if (lo < p.x && p.x < hi) out.push_back(p);
    out.push_back({hi, y_on(v, hi)});
    if (ref.x_from > ref.x_to) std::reverse(out.begin(), out.end());
    return out;
}

bool ref_less(const PieceRef& a, bool abit, const PieceRef& b, bool bbit) {
    if (a.region != b.region) return a.region < b.region;
    if (a.piece != b.piece) return a.piece < b.piece;
    if (a.x_from != b.x_from) return a.x_from < b.x_from;
    if (a.x_to != b.x_to) return a.x_to < b.x_to;
    return abit < bbit;
}

Encoding min_rotation(const Encoding& e) {
    const std::size_t T = e.pieces.size();
    std::size_t best = 0;
    for (std::size_t s = 1; s < T; ++s) {
        for (std::size_t k = 0; k < T; ++k) {
            const std::size_t i = (s + k) % T, j = (best + k) % T;
            if (e.pieces[i] == e.pieces[j] && e.bits[i] == e.bits[j]) continue;
            if (ref_less(e.pieces[i], e.bits[i], e.pieces[j], e.bits[j])) best = s;
            break;
        }
    }
    Encoding r;
    for (std::size_t k = 0; k < T; ++k) {
        r.pieces.push_back(e.pieces[(best + k) % T]);
        r.bits.push_back(e.bits[(best + k) % T]);
    }
    return r;
}

}  // namespace

Polygon normalize_ring(const Polygon& poly) {
    Polygon s = simplify(poly);
    if (s.empty()) return s;
    auto it = std::min_element(s.begin(), s.end());
    std::rotate(s.begin(), it, s.end());
    return s;
}

BBox frame_of_regions(const std::vector<Region>& regions) {
    return frame_of(curves_of_regions(regions, false));
}

SeparatorCurve decode(const std::vector<Region>& regions, const Encoding& enc) {
    const std::size_t T = enc.pieces.size();
    if (T < 2) malformed("a closed curve needs at least two pieces");
    if (enc.bits.size() != T) malformed("one bit per junction required");
    const BBox frame = frame_of_regions(regions);
    std::vector<std::vector<Point2>> runs;
    for (const auto& ref : enc.pieces) runs.push_back(run_points(regions, frame, ref));
    Polygon poly;
    for (std::size_t i = 0; i < T; ++i) {
        poly.insert(poly.end(), runs[i].begin(), runs[i].end());
        const Point2& a = runs[i].back();
        const Point2& b = runs[(i + 1) % T].front();
        if (a == b) {
            if (enc.bits[i]) malformed("bit set on a direct junction");
        } else if (a.x == b.x) {
            if (enc.bits[i] != (b.y > a.y)) malformed("connector bit disagrees with geometry");
        } else {
            malformed("junction is neither direct nor vertical");
        }
    }
    SeparatorCurve c;
    c.pieces = enc.pieces;
    c.bits = enc.bits;
    c.geometry = normalize_ring(poly);
    if (c.geometry.size() < 3 || signed_area2(c.geometry) == 0) malformed("degenerate curve");
    if (find_self_intersection(c.geometry)) malformed("curve is not simple");
    return c;
}

Encoding encode(const SeparatorCurve& curve) {
    Encoding e{curve.pieces, curve.bits};
    if (e.pieces.empty()) return e;
    return min_rotation(e);
}

std::string encoding_key(const Encoding& enc) {
    std::ostringstream os;
    for (std::size_t i = 0; i < enc.pieces.size(); ++i) {
        const auto& p = enc.pieces[i];
        os << p.region << ':' << p.piece << ':' << p.x_from.get_str() << ':' << p.x_to.get_str() << ':'
           << (enc.bits[i] ? 1 : 0) << ';';
    }
    return os.str();
}

SeparatorCurve curve_from_cycle(const std::vector<Region>& regions, const CurveSet& set,
                                const PlanarGraph& g, const std::vector<int>& half_edges,
                                bool verify) {
    const BBox frame = frame_of(set);
    const int L = static_cast<int>(half_edges.size());
    const int curves = static_cast<int>(set.curves.size());
    struct Step {
        bool vertical;
        int region, piece;
    };
    std::vector<Step> steps;
    for (int h : half_edges) {
        const Point2& p = g.points[g.origin[h]];
        const Point2& q = g.points[g.dest(h)];
        if (p.x == q.x) {
            steps.push_back({true, 0, 0});
            continue;
        }
        int tag = g.edge_tag[h / 2];
        if (tag >= 0 && tag < curves) {
            steps.push_back({false, set.curves[tag].region_id, set.curves[tag].piece});
        } else if (tag == -1 && p.y == q.y && (p.y == frame.ymin || p.y == frame.ymax)) {
            steps.push_back({false, kFrameRegion, p.y == frame.ymin ? 0 : 1});
        } else {
            throw Error(ErrorKind::Degenerate, "non-vertical cycle edge off every curve");
        }
    }
    auto same = [&](int i, int j) {
        return !steps[i].vertical && !steps[j].vertical && steps[i].region == steps[j].region &&
               steps[i].piece == steps[j].piece;
    };
    int start = -1;
    for (int i = 0; i < L && start < 0; ++i)
        if (!steps[i].vertical && !same(i, (i + L - 1) % L)) start = i;
    if (start < 0) throw Error(ErrorKind::Degenerate, "cycle does not split into pieces");

    Encoding enc;
    for (int k = 0; k < L;) {
        int i = (start + k) % L;
        PieceRef ref{steps[i].region, steps[i].piece, g.points[g.origin[half_edges[i]]].x, 0};
        int last = i;
        ++k;
        while (k < L && same((start + k) % L, last)) last = (start + k++) % L;
        ref.x_to = g.points[g.dest(half_edges[last])].x;
        Point2 end = g.points[g.dest(half_edges[last])];
        while (k < L && steps[(start + k) % L].vertical) ++k;
        Point2 next = g.points[g.origin[half_edges[(start + k) % L]]];
        enc.pieces.push_back(ref);
        enc.bits.push_back(next.y > end.y);
    }
    Polygon ring;
    for (int h : half_edges) ring.push_back(g.points[g.origin[h]]);
    if (!verify) {
        SeparatorCurve c;
        c.pieces = std::move(enc.pieces);
        c.bits = std::move(enc.bits);
        c.geometry = normalize_ring(ring);
        return c;
    }
    SeparatorCurve c = decode(regions, enc);
    if (c.geometry != normalize_ring(ring)) {
        throw Error(ErrorKind::Degenerate, "encoded curve does not reproduce the cycle");
    }
    return c;
}

}  // namespace pdc
