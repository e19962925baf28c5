pub mod error;
pub mod hecke;
pub mod iwasawa;
pub mod linalg;
pub mod linv;
pub mod module_theory;
pub mod padic;
pub mod poly;
pub mod weight;
pub mod report;
pub mod sl2;
pub mod suite;
pub mod ring;

pub use error::{Error, Result};
pub use hecke::{base_change_adams, frob_charpoly_at_p, sym_transfer, HeckeCharPoly, OrdinaryFrobData};
pub use iwasawa::{DistinguishedFactorization, IwasawaSeries, LayerRing};
pub use linv::{compare_check, greenberg_l, i_k_ideal, l_matrix, scaling_check, LogJacobian};
pub use padic::{PadicContext, PadicNumber};
pub use poly::{RatPoly, ZpPoly};
pub use report::{Report, ReportLine};
pub use sl2::{cg_projection, decomposition_check, m_coeff, phi_composite, sym_power, MCoeffTable};
pub use suite::run_all;
