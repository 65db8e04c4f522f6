//! Finite-window subspaces: terms of the lower central series and the
//! centers, restricted to `span{a_1, ..., a_N}`.
//!
//! Windows are exact, not approximate: the unknowns live inside the window
//! but every bracket is evaluated sparsely (support may reach `a_{N+1}`),
//! so no coefficient is ever silently truncated. A subspace is stored as a
//! canonical RREF basis, which makes subspace equality plain `==`.

use std::fmt;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::linalg::{self, Rref};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowSubspace {
    field: FieldDescriptor,
    window: u32,
    basis: Rref,
}

impl WindowSubspace {
    pub fn zero(field: FieldDescriptor, window: u32) -> WindowSubspace {
        WindowSubspace { field, window, basis: Rref { rows: Vec::new(), pivots: Vec::new() } }
    }

    /// `span{a_start, ..., a_window}`; empty when `start > window`.
    pub fn tail_span(field: FieldDescriptor, start: u32, window: u32) -> WindowSubspace {
        let n = window as usize;
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for idx in start.max(1)..=window {
            let mut row = vec![field.zero(); n];
            row[(idx - 1) as usize] = field.one();
            rows.push(row);
            pivots.push((idx - 1) as usize);
        }
        WindowSubspace { field, window, basis: Rref { rows, pivots } }
    }

    /// The span of arbitrary window elements (each must be supported within
    /// `[1, window]`).
    pub fn from_elements(
        field: FieldDescriptor,
        window: u32,
        spanning: &[Element],
    ) -> Result<WindowSubspace> {
        let mut rows = Vec::new();
        for x in spanning {
            if x.field() != field {
                return Err(Error::MixedFields(field, x.field()));
            }
            if let Some(max) = x.max_support() {
                if max > window {
                    return Err(Error::WindowTooSmall { n: window as usize, need: max as usize });
                }
            }
            rows.push(dense(x, window));
        }
        Ok(WindowSubspace { field, window, basis: linalg::rref(rows)? })
    }

    fn from_kernel(field: FieldDescriptor, window: u32, kernel: Vec<Vec<Scalar>>) -> Result<Self> {
        Ok(WindowSubspace { field, window, basis: linalg::rref(kernel)? })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        if x.field() != self.field {
            return Err(Error::MixedFields(self.field, x.field()));
        }
        if x.max_support().is_some_and(|m| m > self.window) {
            return Ok(false);
        }
        let mut v = dense(x, self.window);
        linalg::reduce_vector(&self.basis, &mut v)?;
        Ok(v.iter().all(Scalar::is_zero))
    }

    pub fn contains_subspace(&self, other: &WindowSubspace) -> Result<bool> {
        for x in other.basis_elements() {
            if !self.contains(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Canonical basis as elements (rows of the RREF).
    pub fn basis_elements(&self) -> Vec<Element> {
        self.basis
            .rows
            .iter()
            .map(|row| {
                let pairs: Vec<(u32, Scalar)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i as u32 + 1, c.clone()))
                    .collect();
                Element::make(self.field, &pairs).expect("basis rows are well-formed")
            })
            .collect()
    }

    /// When the subspace is exactly `span{a_j, ..., a_N}`, returns `j`.
    pub fn tail_start(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let n = self.window as usize;
        let d = self.dim();
        let start = n - d; // candidate pivot offset
        let expected: Vec<usize> = (start..n).collect();
        if self.basis.pivots != expected {
            return None;
        }
        for (r, row) in self.basis.rows.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                let ok = if c == start + r { entry.is_one() } else { entry.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(start as u32 + 1)
    }
}

impl fmt::Display for WindowSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(start) = self.tail_start() {
            return if start == self.window {
                write!(f, "span{{a{start}}}")
            } else {
                write!(f, "span{{a{start}..a{}}}", self.window)
            };
        }
        let items: Vec<String> = self.basis_elements().iter().map(Element::to_string).collect();
        write!(f, "span{{{}}}", items.join(", "))
    }
}

fn dense(x: &Element, window: u32) -> Vec<Scalar> {
    let mut v = vec![x.field().zero(); window as usize];
    for (n, c) in x.terms() {
        v[(n - 1) as usize] = c.clone();
    }
    v
}

/// The `k`-th lower central series term cut to the window:
/// `span{a_k, ..., a_N}` (empty when `k > N`).
pub fn gamma_window(field: FieldDescriptor, k: u32, window: u32) -> WindowSubspace {
    WindowSubspace::tail_span(field, k.max(1), window)
}

/// Left center, right center, and center of the window, each computed by
/// solving the defining linear systems over `span{a_1..a_N}` rather than
/// asserting the known answer. Every bracket is evaluated exactly, so the
/// constraint rows include the coordinate at `a_{N+1}`.
pub struct WindowCenters {
    pub left: WindowSubspace,
    pub right: WindowSubspace,
    pub center: WindowSubspace,
}

pub fn centers_window(field: FieldDescriptor, window: u32) -> Result<WindowCenters> {
    if window < 2 {
        return Err(Error::WindowTooSmall { n: window as usize, need: 2 });
    }
    let n = window as usize;
    let basis: Vec<Element> =
        (1..=window).map(|i| Element::basis(field, i).expect("index >= 1")).collect();

    // constraint rows for "for all j: op(x, a_j) = 0" with x in the window
    let mut constraints =
        |op: &dyn Fn(&Element, &Element) -> Result<Element>| -> Result<Vec<Vec<Scalar>>> {
            let mut rows = Vec::new();
            for aj in &basis {
                let images: Vec<Element> =
                    basis.iter().map(|ai| op(ai, aj)).collect::<Result<_>>()?;
                // one row per output coordinate, including the overflow slot N+1
                for m in 1..=window + 1 {
                    let row: Vec<Scalar> = images.iter().map(|img| img.coeff(m)).collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            Ok(rows)
        };

    let left_rows = constraints(&|x, y| x.bracket(y))?;
    let right_rows = constraints(&|x, y| y.bracket(x))?;
    let mut center_rows = left_rows.clone();
    center_rows.extend(right_rows.clone());

    Ok(WindowCenters {
        left: WindowSubspace::from_kernel(field, window, linalg::kernel_basis(field, left_rows, n)?)?,
        right: WindowSubspace::from_kernel(
            field,
            window,
            linalg::kernel_basis(field, right_rows, n)?,
        )?,
        center: WindowSubspace::from_kernel(
            field,
            window,
            linalg::kernel_basis(field, center_rows, n)?,
        )?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::parse_element;

    fn q() -> FieldDescriptor {
        FieldDescriptor::Rationals
    }

    #[test]
    fn gamma_window_tail_spans() {
        let g1 = gamma_window(q(), 1, 5);
        assert_eq!(g1.dim(), 5);
        assert_eq!(g1.tail_start(), Some(1));

        let g2 = gamma_window(q(), 2, 5);
        assert_eq!(g2.dim(), 4);
        assert_eq!(g2.to_string(), "span{a2..a5}");

        let exhausted = gamma_window(q(), 7, 5);
        assert!(exhausted.is_zero());
        assert_eq!(exhausted.to_string(), "0");
    }

    #[test]
    fn gamma_chain_is_decreasing() {
        for k in 1..=6 {
            let outer = gamma_window(q(), k, 6);
            let inner = gamma_window(q(), k + 1, 6);
            assert!(outer.contains_subspace(&inner).unwrap());
        }
    }

    #[test]
    fn window_intersection_vanishes() {
        // finite-window shadow of the hypocenter: the chain bottoms out
        let n = 6;
        let mut dims: Vec<usize> = Vec::new();
        for k in 1..=n + 1 {
            dims.push(gamma_window(q(), k, n).dim());
        }
        assert_eq!(dims, vec![6, 5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn centers_solved_not_asserted() {
        for n in 2..=8 {
            let centers = centers_window(q(), n).unwrap();
            assert_eq!(centers.left, WindowSubspace::tail_span(q(), 2, n), "left, N={n}");
            assert!(centers.right.is_zero(), "right, N={n}");
            assert!(centers.center.is_zero(), "center, N={n}");
        }
    }

    #[test]
    fn centers_window_too_small() {
        assert!(matches!(centers_window(q(), 1), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn centers_over_prime_field() {
        let gf5 = FieldDescriptor::prime_field(5).unwrap();
        let centers = centers_window(gf5, 4).unwrap();
        assert_eq!(centers.left.to_string(), "span{a2..a4}");
        assert!(centers.right.is_zero());
        assert!(centers.center.is_zero());
    }

    #[test]
    fn membership_and_overflow() {
        let g2 = gamma_window(q(), 2, 5);
        assert!(g2.contains(&parse_element(q(), "a2 - 3*a5").unwrap()).unwrap());
        assert!(!g2.contains(&parse_element(q(), "a1 + a2").unwrap()).unwrap());
        // support outside the window is never inside
        assert!(!g2.contains(&parse_element(q(), "a6").unwrap()).unwrap());
    }

    #[test]
    fn from_elements_spans() {
        let xs = [
            parse_element(q(), "a2 + a3").unwrap(),
            parse_element(q(), "a3").unwrap(),
            parse_element(q(), "2*a2 - a3").unwrap(),
        ];
        let s = WindowSubspace::from_elements(q(), 4, &xs).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.tail_start(), None); // span{a2, a3}, not a tail of the window
        assert!(s.contains(&parse_element(q(), "5*a2 - 7*a3").unwrap()).unwrap());
    }
}
