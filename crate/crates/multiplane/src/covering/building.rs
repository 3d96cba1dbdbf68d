//! Reduced building data of an abelian covering: generator line bundles,
//! branch divisors with their assigned character values, the line bundle of
//! an arbitrary character, and the normalization step along a shared
//! component.

use crate::error::{Error, Result};

/// A formal divisor class: a degree together with a formal combination of
/// named curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub degree: i64,
    /// Coefficients of the named curves, parallel to the branch-part list
    /// that produced the class.
    pub coefficients: Vec<i64>,
}

/// One branch part: the image of the character group in a cyclic group,
/// with the sub-divisor of the branch locus it is attached to.
#[derive(Clone, Debug)]
pub struct BranchPart {
    pub label: String,
    /// Order of the cyclic quotient.
    pub order: u64,
    /// Degree of the attached divisor.
    pub divisor_degree: i64,
    /// Values of the epimorphism on the chosen generators, one per
    /// generator, as residues modulo `order`.
    pub values: Vec<u64>,
}

/// Reduced building data: generator bundle degrees and branch parts.
#[derive(Clone, Debug)]
pub struct BuildingData {
    /// Orders of the chosen generators of the character group.
    pub orders: Vec<u64>,
    /// Degrees of the line bundles attached to the generators.
    pub generator_degrees: Vec<i64>,
    pub parts: Vec<BranchPart>,
}

impl BuildingData {
    /// Check the defining linear equivalences degreewise:
    /// `n_j deg L_j = sum_f (n_j f_j^* / m_f) deg B_f`.
    pub fn validate(&self) -> Result<()> {
        let s = self.orders.len();
        if self.generator_degrees.len() != s {
            return Err(Error::input("generator degree list does not match the orders"));
        }
        for part in &self.parts {
            if part.values.len() != s {
                return Err(Error::input(format!(
                    "branch part {} has {} values, expected {s}",
                    part.label,
                    part.values.len()
                )));
            }
            if part.order == 0 {
                return Err(Error::input("branch part of order zero"));
            }
        }
        for j in 0..s {
            let n = self.orders[j] as i64;
            let lhs = n * self.generator_degrees[j];
            let mut rhs = 0i64;
            for part in &self.parts {
                let m = part.order as i64;
                let v = (part.values[j] % part.order) as i64;
                let scaled = n * v;
                if scaled % m != 0 {
                    return Err(Error::input(format!(
                        "branch part {}: n_j f(chi_j) is not divisible by the order",
                        part.label
                    )));
                }
                rhs += scaled / m * part.divisor_degree;
            }
            if lhs != rhs {
                return Err(Error::input(format!(
                    "building-data equivalence fails for generator {j}: {lhs} != {rhs}"
                )));
            }
        }
        Ok(())
    }

    /// The line bundle of the character with the given exponents:
    /// `sum_j a_j L_j - sum_f floor(sum_j a_j f(chi_j)^* / m_f) B_f`.
    pub fn l_chi(&self, a: &[u64]) -> Result<DivisorClass> {
        if a.len() != self.orders.len() {
            return Err(Error::input("character exponent length mismatch"));
        }
        for (aj, &nj) in a.iter().zip(&self.orders) {
            if *aj >= nj {
                return Err(Error::input("character exponent out of range"));
            }
        }
        let mut degree: i64 =
            a.iter().zip(&self.generator_degrees).map(|(&aj, &d)| aj as i64 * d).sum();
        let mut coefficients = Vec::with_capacity(self.parts.len());
        for part in &self.parts {
            let m = part.order;
            let num: u64 =
                a.iter().zip(&part.values).map(|(&aj, &v)| aj * (v % m)).sum();
            let fl = (num / m) as i64;
            coefficients.push(-fl);
            degree -= fl * part.divisor_degree;
        }
        Ok(DivisorClass { degree, coefficients })
    }

    /// The normalization step along a component `C` of multiplicity one in
    /// both `B_f` and `B_g`: the class of the character after the covering
    /// is normalized there.
    ///
    /// Writing `B_f = C + R_f` and `B_g = C + R_g`, the class becomes
    /// `sum a_j L_j - floor(sum a_j (f_j^*/m_f + g_j^*/m_g)) C
    ///  - floor(sum a_j f_j^*/m_f) R_f - floor(sum a_j g_j^*/m_g) R_g
    ///  - sum_{h != f,g} floor(sum a_j h_j^*/m_h) B_h`,
    /// reported here as the coefficients over `(C, R_f, R_g, B_h...)`.
    pub fn normalize_step(
        &self,
        f: usize,
        g: usize,
        c_degree: i64,
        a: &[u64],
    ) -> Result<NormalizedClass> {
        if f == g || f >= self.parts.len() || g >= self.parts.len() {
            return Err(Error::input("normalization needs two distinct branch parts"));
        }
        if c_degree > self.parts[f].divisor_degree || c_degree > self.parts[g].divisor_degree {
            return Err(Error::input(
                "the shared component must be contained in both branch divisors",
            ));
        }
        let mf = self.parts[f].order;
        let mg = self.parts[g].order;
        // floor(sum a_j (f_j^*/m_f + g_j^*/m_g)) with exact rationals:
        // common denominator m_f m_g.
        let mut num: u64 = 0;
        for (j, &aj) in a.iter().enumerate() {
            let vf = self.parts[f].values[j] % mf;
            let vg = self.parts[g].values[j] % mg;
            num += aj * (vf * mg + vg * mf);
        }
        let shared_floor = (num / (mf * mg)) as i64;
        let f_floor = {
            let n: u64 =
                a.iter().zip(&self.parts[f].values).map(|(&aj, &v)| aj * (v % mf)).sum();
            (n / mf) as i64
        };
        let g_floor = {
            let n: u64 =
                a.iter().zip(&self.parts[g].values).map(|(&aj, &v)| aj * (v % mg)).sum();
            (n / mg) as i64
        };
        let mut degree: i64 =
            a.iter().zip(&self.generator_degrees).map(|(&aj, &d)| aj as i64 * d).sum();
        degree -= shared_floor * c_degree;
        degree -= f_floor * (self.parts[f].divisor_degree - c_degree);
        degree -= g_floor * (self.parts[g].divisor_degree - c_degree);
        let mut others = Vec::new();
        for (h, part) in self.parts.iter().enumerate() {
            if h == f || h == g {
                continue;
            }
            let n: u64 =
                a.iter().zip(&part.values).map(|(&aj, &v)| aj * (v % part.order)).sum();
            let fl = (n / part.order) as i64;
            degree -= fl * part.divisor_degree;
            others.push((h, -fl));
        }
        Ok(NormalizedClass {
            degree,
            shared: -shared_floor,
            residual_f: -f_floor,
            residual_g: -g_floor,
            others,
        })
    }
}

/// Result of one normalization step: the coefficients of the shared
/// component, the two residual divisors, and the untouched branch parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedClass {
    pub degree: i64,
    pub shared: i64,
    pub residual_f: i64,
    pub residual_g: i64,
    pub others: Vec<(usize, i64)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic_data(n: u64, d: i64) -> BuildingData {
        // One generator of order n, one branch curve of degree d with value
        // 1, plus the line at infinity absorbing the degree defect.
        let defect = ((d + n as i64 - 1) / n as i64) * n as i64 - d;
        BuildingData {
            orders: vec![n],
            generator_degrees: vec![(d + defect) / n as i64],
            parts: vec![
                BranchPart {
                    label: "C".into(),
                    order: n,
                    divisor_degree: d,
                    values: vec![1],
                },
                BranchPart {
                    label: "H".into(),
                    order: if defect == 0 {
                        1
                    } else {
                        n / num_integer::gcd(n, defect as u64)
                    },
                    divisor_degree: 1,
                    values: vec![if defect == 0 {
                        0
                    } else {
                        (defect as u64) / num_integer::gcd(n, defect as u64)
                    }],
                },
            ],
        }
    }

    #[test]
    fn trivial_character_class() {
        let data = cyclic_data(3, 4);
        data.validate().unwrap();
        let class = data.l_chi(&[0]).unwrap();
        assert_eq!(class.degree, 0);
        assert!(class.coefficients.iter().all(|&c| c == 0));
    }

    #[test]
    fn cyclic_cover_first_character() {
        // Cyclic n-cover of a degree-d curve: a = 1 gives degree ceil(d/n).
        for (n, d) in [(3u64, 4i64), (5, 4), (4, 4), (2, 6)] {
            let data = cyclic_data(n, d);
            data.validate().unwrap();
            let class = data.l_chi(&[1]).unwrap();
            assert_eq!(class.degree, (d + n as i64 - 1) / (n as i64), "n={n} d={d}");
        }
    }

    #[test]
    fn normalize_step_no_subtraction_below_one() {
        // Orders n = m_f = m_g, values summing below 1: the shared
        // component is not subtracted.
        // 6L ~ 3 B_f + 2 B_g with deg B_f = 2, deg B_g = 3.
        let data = BuildingData {
            orders: vec![6],
            generator_degrees: vec![2],
            parts: vec![
                BranchPart { label: "f".into(), order: 2, divisor_degree: 2, values: vec![1] },
                BranchPart { label: "g".into(), order: 3, divisor_degree: 3, values: vec![1] },
            ],
        };
        data.validate().unwrap();
        // a = 1: 1/2 + 1/3 < 1.
        let out = data.normalize_step(0, 1, 1, &[1]).unwrap();
        assert_eq!(out.shared, 0);
    }

    #[test]
    fn normalize_step_subtracts_once() {
        // m_f = 2 with value 1, m_g = 3 with value 2:
        // floor(1/2 + 2/3) = 1, so the shared component is subtracted once.
        // 6L ~ 3 B_f + 4 B_g with deg B_f = 4, deg B_g = 3.
        let data = BuildingData {
            orders: vec![6],
            generator_degrees: vec![4],
            parts: vec![
                BranchPart { label: "f".into(), order: 2, divisor_degree: 4, values: vec![1] },
                BranchPart { label: "g".into(), order: 3, divisor_degree: 3, values: vec![2] },
            ],
        };
        data.validate().unwrap();
        let out = data.normalize_step(0, 1, 1, &[1]).unwrap();
        assert_eq!(out.shared, -1);
        assert_eq!(out.residual_f, 0);
        assert_eq!(out.residual_g, 0);
        // Cross-check against the composed epimorphism: lcm 6, the image of
        // the generator is 3*1 + 2*2 = 7, i.e. 1 mod 6, and
        // floor(1/2) + floor(2/3) + (7 - 7 mod 6)/6 = 1 = floor(1/2 + 2/3).
        assert_eq!((3 + 2 * 2 - 1) / 6, 1);
    }
}
