//! Lozenge tilings of regions on the triangular lattice: builders for the
//! stacked-hook regions and symmetric hexagons, a brute-force tiler that
//! understands free boundaries and weights, and the matching determinant
//! formulas.

mod build;
mod cell;
mod formula;
mod region;
mod render;
mod symmetry;
mod tiler;

pub use build::{
    build_a, build_a_tilde, build_hexagon_with_holes, build_punctured_hexagon, cells_in_polygon, hexagon_alias_shape,
    punctured_alias_shape, shifted_wedge_hook, wedge_hook,
};
pub use cell::{point6, Cell, LozengeKind, Orient};
pub use formula::{
    double_staircase_count, m_a_tilde_via_formula, mf_a_via_formula, product_formula_4_1, region_path_matrix,
    verify_theorem_3_1, verify_theorem_4_2, HexagonFamily, Theorem31Report, Theorem42Report,
};
pub use region::Region;
pub use render::render_svg;
pub use symmetry::{
    count_symmetric_tilings, count_symmetric_tilings_by_filter, double_across_free_boundary, CellMap, SymmetryMode,
};
pub use tiler::{count_tilings_bruteforce, Tile, Tiler, MAX_CELLS};
