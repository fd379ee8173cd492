#include "occtomo/operators.hpp"

#include <stdexcept>

namespace occtomo {

SparseOperator build_projection(const Grid& grid, const ViewSet& views, Weighting weighting) {
    SparseOperator P(views.n_rays(), grid.pixel_count());
    for (int v = 0; v < views.n_views(); ++v) {
        for (int d = 0; d < views.detector_pixels; ++d) {
            const int row = views.ray_index(v, d);
            for (const Crossing& c : trace_ray(grid, views.views[v].rays[d])) {
                P.add(row, c.pixel, weighting == Weighting::length ? c.length : 1.0);
            }
        }
    }
    P.finalize();
    return P;
}

NonlinearModel build_nonlinear(const Grid& grid, const ViewSet& views, Weighting weighting,
                               bool exclude_source, ModelStorage storage) {
    const int K = grid.pixel_count();
    NonlinearModel m;
    m.grid = grid;
    m.views = views;
    m.weighting = weighting;
    m.exclude_source = exclude_source;
    m.storage = storage;

    // First pass: term keys and projection weights, in row-major / traversal order.
    std::vector<double> weights;
    for (int v = 0; v < views.n_views(); ++v) {
        for (int d = 0; d < views.detector_pixels; ++d) {
            const int row = views.ray_index(v, d);
            for (const Crossing& c : trace_ray(grid, views.views[v].rays[d])) {
                m.term_index.push_back({row, c.pixel});
                weights.push_back(weighting == Weighting::length ? c.length : 1.0);
            }
        }
    }
    const int n_terms = static_cast<int>(m.term_index.size());

    m.C = SparseOperator(views.n_rays(), n_terms);
    m.C.reserve(weights.size());
    for (int t = 0; t < n_terms; ++t)
        m.C.add(m.term_index[static_cast<std::size_t>(t)].detector_row, t,
                weights[static_cast<std::size_t>(t)]);
    m.C.finalize();

    m.E = SparseOperator(n_terms, 2 * K);
    if (storage == ModelStorage::assembled) {
        // Term t of ray k sees, on the attenuation side, exactly the pixels
        // the ray crosses between the source pixel and the detector (the
        // detector is at point_b, so those are the later crossings).
        std::size_t nnz = 0;
        for (int k = 0; k < views.n_rays(); ++k) {
            const auto n = trace_ray(grid, views.ray(k)).size();
            nnz += n * (n + 1) / 2 + (exclude_source ? 0 : n);
        }
        m.E.reserve(nnz);
        int t = 0;
        for (int k = 0; k < views.n_rays(); ++k) {
            const auto crossings = trace_ray(grid, views.ray(k));
            for (std::size_t q = 0; q < crossings.size(); ++q, ++t) {
                if (!exclude_source) m.E.add(t, crossings[q].pixel, 1.0);
                for (std::size_t i = q + 1; i < crossings.size(); ++i)
                    m.E.add(t, crossings[i].pixel, 1.0);
                m.E.add(t, K + crossings[q].pixel, 1.0);
            }
        }
    }
    m.E.finalize();
    return m;
}

SparseOperator build_downsampler(const ViewSet& views) {
    SparseOperator D(views.n_views(), views.n_rays());
    for (int v = 0; v < views.n_views(); ++v)
        for (int d = 0; d < views.detector_pixels; ++d) D.add(v, views.ray_index(v, d), 1.0);
    D.finalize();
    return D;
}

}  // namespace occtomo
