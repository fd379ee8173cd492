#pragma once

#include <cstdint>
#include <vector>

#include "occtomo/geometry.hpp"
#include "occtomo/sparse.hpp"
#include "occtomo/views.hpp"

namespace occtomo {

enum class Weighting { length, binary };

/// How the attenuation factor E is held: fully assembled in memory, or
/// re-traced on every application (slower, but memory stays O(nnz(P))).
enum class ModelStorage { assembled, retraced };

/// One (detector row, source pixel) pair of the factored nonlinear model.
struct TermKey {
    int detector_row = 0;
    int source_pixel = 0;
};

/// The factored forward model b = C exp(E log x). C is detector-rows by
/// term-rows and holds the projection weight of each term; E is term-rows by
/// 2K and holds, per term, one unit attenuation entry for every pixel
/// strictly between the source pixel and the detector along the term's ray
/// (columns 0..K-1), plus a single unit entry selecting the source
/// brightness (column K + j). Unit exponents make one fully opaque pixel
/// suppress a term by exactly the opacity floor, which keeps the model
/// consistent with the first-seen occlusion renderer.
struct NonlinearModel {
    SparseOperator C;
    SparseOperator E;  // empty in retraced mode
    Grid grid;
    ViewSet views;
    std::vector<TermKey> term_index;  // term row -> (detector row, source pixel)
    Weighting weighting = Weighting::length;
    bool exclude_source = true;
    ModelStorage storage = ModelStorage::assembled;

    int n_terms() const { return static_cast<int>(term_index.size()); }
    int n_detector_rows() const { return C.rows(); }
    int n_pixels() const { return grid.pixel_count(); }

    /// Detector-side endpoint of the ray feeding detector row k.
    Vec2 detector_point(int detector_row) const { return views.ray(detector_row).point_b; }

    /// Visits the E-row entries of one term as (column, value) pairs, in
    /// path-traversal order, regardless of storage mode. The source-selector
    /// entry (column K + j, value 1) comes last.
    template <typename Fn>
    void for_each_term_entry(int term, Fn&& fn) const;
};

/// Linear projection operator P: one row per detector ray (view-major),
/// one column per pixel; entry (k, j) is ray k's chord through pixel j in
/// pixel units (or 1 under binary weighting).
SparseOperator build_projection(const Grid& grid, const ViewSet& views,
                                Weighting weighting = Weighting::length);

/// Factors the occlusion-aware model: one term row per nonzero of P. Term
/// rows are ordered view-major, then detector pixel, then ray-traversal
/// order of the source pixels.
NonlinearModel build_nonlinear(const Grid& grid, const ViewSet& views,
                               Weighting weighting = Weighting::length,
                               bool exclude_source = true,
                               ModelStorage storage = ModelStorage::assembled);

/// D: n_views by n_views*detector_pixels; sums each view's detector rows to
/// a single per-view measurement.
SparseOperator build_downsampler(const ViewSet& views);

template <typename Fn>
void NonlinearModel::for_each_term_entry(int term, Fn&& fn) const {
    const int K = n_pixels();
    if (storage == ModelStorage::assembled) {
        for (std::size_t i = E.row_begin(term); i < E.row_end(term); ++i) {
            const auto& e = E.entries()[i];
            fn(e.col, e.value);
        }
    } else {
        const TermKey key = term_index[static_cast<std::size_t>(term)];
        const auto crossings = trace_ray(grid, views.ray(key.detector_row));
        std::size_t at = crossings.size();
        for (std::size_t i = 0; i < crossings.size(); ++i) {
            if (crossings[i].pixel == key.source_pixel) {
                at = i;
                break;
            }
        }
        if (!exclude_source && at < crossings.size()) fn(crossings[at].pixel, 1.0);
        for (std::size_t i = at + 1; i < crossings.size(); ++i) fn(crossings[i].pixel, 1.0);
        fn(K + key.source_pixel, 1.0);
    }
}

}  // namespace occtomo
