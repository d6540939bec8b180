//! Descent on `ℓ`-th power twists over `K = F_q(t)`: twist models, ambient
//! groups, norm kernels, the coboundary `f_•`, admissible primes, rank-0
//! twists and Selmer growth.

mod ambient;
mod coboundary;
mod curve;
mod growth;
mod kernel;

pub use ambient::{
    ambient_group_k, ambient_group_l_const, ambient_group_split, norm_images, norm_map, AmbientClass,
    AmbientGroup, GenKind, Generator,
};
pub use coboundary::{
    fdot_eval, pull_back_divisor, res_place, split_ambient, theta_delta_torsion, verify_prop_key2, x_roots,
    DivPoint, Divisor, LocalClass, LocalFactor, TorsionImage,
};
pub use curve::{
    eval_at_kelem, eval_at_poly, rational_roots, spec_field, spec_poly, twist_model, CurveSpec, PlaceSet,
    RootData, SuperellipticCurve, TwistParam,
};
pub use growth::{build_yj, dprime_member, dprime_symbols, grow_selmer, GrowthReport, GrowthStep, YJ};
pub use kernel::{
    compare_kernels, dw_enumerate, dw_member_ff, find_rank0_twists, is_inert, ker_norm, kernel_comparison,
    selmer_ambient_bound, DensityReport, DensityRow, Exactness, KernelComparison, NormKernel, Rank0Twist,
    SelmerBound,
};
