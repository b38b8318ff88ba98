//! Nonabelian tensor and exterior squares, `κ`, `κ′`, `∇` and the Schur
//! multiplier `M(G) = ker κ′`.
//!
//! Conventions: `x^y = y^-1 x y`, `[x, y] = x^-1 y^-1 x y`, and `x ⊗ y`
//! corresponds to `[x, y^φ]` in `ν(G)`, so `κ(x ⊗ y) = [x, y]`.
//!
//! Two independent constructions exist. The `ν(G)` route yields the full
//! tensor square; the Hopf route (through a free presentation) yields the
//! exterior square directly and scales to larger groups. [`Route::Auto`]
//! picks `ν(G)` for small groups and falls back when enumeration hits its cap.

mod hopf;
mod identities;
mod nu;
mod oracle;

use serde::Serialize;

pub use identities::{check_brown_identities, BrownReport, BrownViolation};
pub use nu::{nu_presentation, NuPresentation};
pub use oracle::{abelian_exterior_oracle, AbelianOracle};

use crate::error::{Error, Result};
use crate::fp::default_coset_limit;
use crate::group::{AbelianInvariants, Elem, FiniteGroup, GroupHom, Subgroup};

/// Largest order for which the automatic route tries `ν(G)` first.
pub const NU_MAX_ORDER: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Nu,
    Hopf,
    Auto,
}

#[derive(Clone, Debug)]
pub struct ExteriorOptions {
    pub route: Route,
    pub nu_max_order: usize,
    pub coset_limit: usize,
}

impl Default for ExteriorOptions {
    fn default() -> Self {
        ExteriorOptions {
            route: Route::Auto,
            nu_max_order: NU_MAX_ORDER,
            coset_limit: default_coset_limit(),
        }
    }
}

/// `T = [G, G^φ] ≅ G ⊗ G` with the pairing, `∇(G)`, `κ` and the `G`-action.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    pub t: FiniteGroup,
    pair: Vec<Elem>,
    pub nabla: Subgroup,
    pub kappa: GroupHom,
    /// `action[z * |T| + s] = s^z`.
    action: Vec<Elem>,
    group_order: usize,
    /// Order of the enumerated `ν(G)`.
    pub nu_order: usize,
}

impl TensorSquare {
    #[inline]
    pub fn pair(&self, x: Elem, y: Elem) -> Elem {
        self.pair[x as usize * self.group_order + y as usize]
    }

    #[inline]
    pub fn kappa(&self, s: Elem) -> Elem {
        self.kappa.apply(s)
    }

    #[inline]
    pub fn act(&self, s: Elem, z: Elem) -> Elem {
        self.action[z as usize * self.t.order() + s as usize]
    }
}

/// `W = G ∧ G` with the pairing, `κ′`, the multiplier and the `G`-action.
#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    pub w: FiniteGroup,
    wedge: Vec<Elem>,
    pub kappa_prime: GroupHom,
    pub multiplier: Subgroup,
    pub multiplier_invariants: AbelianInvariants,
    action: Vec<Elem>,
    group_order: usize,
    pub route: Route,
    /// Present for the `ν(G)` route, together with the quotient `T -> W`.
    pub tensor: Option<(TensorSquare, GroupHom)>,
}

impl ExteriorSquare {
    fn assemble(
        g: &FiniteGroup,
        w: FiniteGroup,
        wedge: Vec<Elem>,
        kappa_prime: GroupHom,
        action: Vec<Elem>,
        route: Route,
        tensor: Option<(TensorSquare, GroupHom)>,
    ) -> Result<Self> {
        let multiplier = kappa_prime.kernel(&w, g);
        let (m, _) = w.subgroup_as_group(&multiplier)?;
        let multiplier_invariants = m.abelian_invariants()?;
        Ok(ExteriorSquare {
            w,
            wedge,
            kappa_prime,
            multiplier,
            multiplier_invariants,
            action,
            group_order: g.order(),
            route,
            tensor,
        })
    }

    /// `W = T/∇` with everything induced through the quotient map.
    pub fn from_tensor(g: &FiniteGroup, t: TensorSquare) -> Result<Self> {
        let (w, eps) = t.t.quotient(&t.nabla)?;
        let n = g.order();
        let wedge: Vec<Elem> = t.pair.iter().map(|&s| eps.apply(s)).collect();
        let mut kp = vec![g.identity(); w.order()];
        let mut action = vec![0 as Elem; n * w.order()];
        for s in t.t.elements() {
            let ws = eps.apply(s) as usize;
            kp[ws] = t.kappa(s);
            for z in g.elements() {
                action[z as usize * w.order() + ws] = eps.apply(t.act(s, z));
            }
        }
        let w = w.with_label(format!("{}^{}", g.label(), g.label()));
        Self::assemble(
            g,
            w,
            wedge,
            GroupHom { images: kp },
            action,
            Route::Nu,
            Some((t, eps)),
        )
    }

    #[inline]
    pub fn wedge(&self, x: Elem, y: Elem) -> Elem {
        self.wedge[x as usize * self.group_order + y as usize]
    }

    #[inline]
    pub fn wedge_is_trivial(&self, x: Elem, y: Elem) -> bool {
        self.wedge(x, y) == self.w.identity()
    }

    #[inline]
    pub fn kappa_prime(&self, w: Elem) -> Elem {
        self.kappa_prime.apply(w)
    }

    /// `w^z` for the action of `G` on `W`.
    #[inline]
    pub fn act(&self, w: Elem, z: Elem) -> Elem {
        self.action[z as usize * self.w.order() + w as usize]
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    /// `|{(x, y) : x ∧ y = 1}|`.
    pub fn trivial_pair_count(&self) -> u64 {
        let e = self.w.identity();
        self.wedge.iter().filter(|&&w| w == e).count() as u64
    }
}

/// `G ⊗ G` through `ν(G)`, with the default coset limit.
pub fn tensor_square(g: &FiniteGroup) -> Result<TensorSquare> {
    nu::tensor_square(g, default_coset_limit())
}

pub fn tensor_square_with_limit(g: &FiniteGroup, limit: usize) -> Result<TensorSquare> {
    nu::tensor_square(g, limit)
}

/// `G ∧ G` by the automatic route with default options.
pub fn exterior_square(g: &FiniteGroup) -> Result<ExteriorSquare> {
    exterior_square_with(g, &ExteriorOptions::default())
}

pub fn exterior_square_with(g: &FiniteGroup, opts: &ExteriorOptions) -> Result<ExteriorSquare> {
    match opts.route {
        Route::Nu => ExteriorSquare::from_tensor(g, nu::tensor_square(g, opts.coset_limit)?),
        Route::Hopf => hopf::exterior_square(g),
        Route::Auto => {
            if g.order() <= opts.nu_max_order {
                match nu::tensor_square(g, opts.coset_limit) {
                    Ok(t) => return ExteriorSquare::from_tensor(g, t),
                    Err(Error::EnumerationLimitExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            hopf::exterior_square(g)
        }
    }
}

pub fn schur_multiplier(g: &FiniteGroup) -> Result<AbelianInvariants> {
    Ok(exterior_square(g)?.multiplier_invariants)
}

/// Agreement of the two constructions on one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteComparison {
    pub nu_exterior_order: usize,
    pub hopf_exterior_order: usize,
    pub nu_multiplier: AbelianInvariants,
    pub hopf_multiplier: AbelianInvariants,
    /// Whether `x ∧ y = 1` holds for exactly the same pairs.
    pub same_trivial_pairs: bool,
}

impl RouteComparison {
    pub fn agree(&self) -> bool {
        self.nu_exterior_order == self.hopf_exterior_order
            && self.nu_multiplier == self.hopf_multiplier
            && self.same_trivial_pairs
    }
}

pub fn compare_routes(g: &FiniteGroup, limit: usize) -> Result<RouteComparison> {
    let a = ExteriorSquare::from_tensor(g, nu::tensor_square(g, limit)?)?;
    let b = hopf::exterior_square(g)?;
    let n = g.order() as Elem;
    let same = (0..n).all(|x| (0..n).all(|y| a.wedge_is_trivial(x, y) == b.wedge_is_trivial(x, y)));
    Ok(RouteComparison {
        nu_exterior_order: a.w.order(),
        hopf_exterior_order: b.w.order(),
        nu_multiplier: a.multiplier_invariants,
        hopf_multiplier: b.multiplier_invariants,
        same_trivial_pairs: same,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::group_from_family;

    fn sq(spec: &str, route: Route) -> ExteriorSquare {
        let g = group_from_family(spec).unwrap();
        exterior_square_with(
            &g,
            &ExteriorOptions {
                route,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn nu_orders_for_small_groups() {
        let c2 = group_from_family("cyclic:2").unwrap();
        assert_eq!(tensor_square(&c2).unwrap().nu_order, 8);
        let v4 = group_from_family("abelian:[2,2]").unwrap();
        let t = tensor_square(&v4).unwrap();
        assert_eq!(t.nu_order, 256);
        assert_eq!(t.t.abelian_invariants().unwrap().torsion, vec![2, 2, 2, 2]);
        let triv = group_from_family("cyclic:1").unwrap();
        assert_eq!(tensor_square(&triv).unwrap().t.order(), 1);
    }

    #[test]
    fn known_exterior_squares() {
        for route in [Route::Nu, Route::Hopf] {
            let v4 = sq("abelian:[2,2]", route);
            assert_eq!(v4.w.order(), 2);
            assert_eq!(v4.multiplier_invariants.torsion, vec![2]);
            let q8 = sq("quaternion:8", route);
            assert_eq!(q8.w.order(), 2);
            assert!(q8.multiplier_invariants.is_trivial());
            let d8 = sq("dihedral:8", route);
            assert_eq!(d8.multiplier_invariants.torsion, vec![2]);
            assert_eq!(d8.w.order(), 4);
            let c6 = sq("cyclic:6", route);
            assert_eq!(c6.w.order(), 1);
        }
    }

    #[test]
    fn pairing_properties() {
        let g = group_from_family("symmetric:3").unwrap();
        let t = tensor_square(&g).unwrap();
        assert_eq!(t.t.order(), 6);
        for x in g.elements() {
            assert_eq!(t.pair(x, g.identity()), t.t.identity());
            assert_eq!(t.pair(g.identity(), x), t.t.identity());
            for y in g.elements() {
                assert_eq!(t.kappa(t.pair(x, y)), g.commutator(x, y));
            }
        }
        assert!(t.kappa.is_homomorphism(&t.t, &g));
        for &s in t.nabla.members() {
            assert_eq!(t.kappa(s), g.identity());
            assert!(t.t.elements().all(|u| t.t.commute(s, u)));
        }
    }

    #[test]
    fn routes_agree_on_small_groups() {
        for spec in [
            "dihedral:8",
            "quaternion:8",
            "abelian:[2,4]",
            "symmetric:3",
            "symmetric:4",
            "dihedral:16",
        ] {
            let g = group_from_family(spec).unwrap();
            let c = compare_routes(&g, default_coset_limit()).unwrap();
            assert!(c.agree(), "{spec}: {c:?}");
        }
    }
}
