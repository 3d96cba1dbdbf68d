use super::fraction::Fraction;
use super::matrix::solve_affine;

/// Relation of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
    Ge,
}

/// A linear program over the unit box: linear constraints on variables
/// confined to `[0,1]`, solved by an exact primal simplex with Bland's
/// rule.
#[derive(Clone, Debug)]
pub struct BoxProgram {
    vars: usize,
    constraints: Vec<(Vec<Fraction>, Rel, Fraction)>,
}

impl BoxProgram {
    pub fn new(vars: usize) -> Self {
        BoxProgram { vars, constraints: Vec::new() }
    }

    pub fn add(&mut self, normal: Vec<Fraction>, rel: Rel, rhs: Fraction) {
        assert_eq!(normal.len(), self.vars);
        self.constraints.push((normal, rel, rhs));
    }

    pub fn is_feasible(&self) -> bool {
        self.solve(None).is_some()
    }

    /// Minimum of `cost . x` over the feasible region, or `None` when the
    /// region is empty.  The box keeps every objective bounded.
    pub fn minimize(&self, cost: &[Fraction]) -> Option<Fraction> {
        assert_eq!(cost.len(), self.vars);
        self.solve(Some(cost))
    }

    fn solve(&self, cost: Option<&[Fraction]>) -> Option<Fraction> {
        let t = self.vars;
        let m_box = t;
        // Columns: structural, box slacks, constraint slacks, artificials.
        let mut n_slack = 0usize;
        let mut n_art = 0usize;
        // Normalize right-hand sides to be non-negative.
        let mut rows: Vec<(Vec<Fraction>, Rel, Fraction)> = Vec::new();
        for (normal, rel, rhs) in &self.constraints {
            let (normal, rel, rhs) = if rhs.is_negative() {
                let flipped = match rel {
                    Rel::Eq => Rel::Eq,
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                };
                (normal.iter().map(|c| -c).collect::<Vec<_>>(), flipped, -rhs)
            } else {
                (normal.clone(), *rel, rhs.clone())
            };
            match rel {
                Rel::Le => n_slack += 1,
                Rel::Ge => {
                    n_slack += 1;
                    n_art += 1;
                }
                Rel::Eq => n_art += 1,
            }
            rows.push((normal, rel, rhs));
        }
        let m = m_box + rows.len();
        let first_slack = 2 * t;
        let first_artificial = first_slack + n_slack;
        let n = first_artificial + n_art;
        let mut a = vec![vec![Fraction::zero(); n]; m];
        let mut b = vec![Fraction::zero(); m];
        let mut basis = vec![0usize; m];
        // Box rows x_i + s_i = 1.
        for i in 0..t {
            a[i][i] = Fraction::one();
            a[i][t + i] = Fraction::one();
            b[i] = Fraction::one();
            basis[i] = t + i;
        }
        let mut slack = first_slack;
        let mut art = first_artificial;
        for (r, (normal, rel, rhs)) in rows.into_iter().enumerate() {
            let row = m_box + r;
            for (i, c) in normal.into_iter().enumerate() {
                a[row][i] = c;
            }
            b[row] = rhs;
            match rel {
                Rel::Le => {
                    a[row][slack] = Fraction::one();
                    basis[row] = slack;
                    slack += 1;
                }
                Rel::Ge => {
                    a[row][slack] = -Fraction::one();
                    slack += 1;
                    a[row][art] = Fraction::one();
                    basis[row] = art;
                    art += 1;
                }
                Rel::Eq => {
                    a[row][art] = Fraction::one();
                    basis[row] = art;
                    art += 1;
                }
            }
        }
        let mut lp = Tableau { n, first_artificial, a, b, basis };
        let mut phase1 = vec![Fraction::zero(); n];
        for j in first_artificial..n {
            phase1[j] = Fraction::one();
        }
        if !lp.run(&phase1, true).is_zero() {
            return None;
        }
        lp.evict_artificials();
        match cost {
            None => Some(Fraction::zero()),
            Some(c) => {
                let mut full = vec![Fraction::zero(); n];
                full[..t].clone_from_slice(c);
                Some(lp.run(&full, false))
            }
        }
    }
}

struct Tableau {
    n: usize,
    first_artificial: usize,
    a: Vec<Vec<Fraction>>,
    b: Vec<Fraction>,
    basis: Vec<usize>,
}

impl Tableau {
    /// Primal simplex with Bland's rule.  Artificial columns may enter only
    /// during phase 1.
    fn run(&mut self, cost: &[Fraction], phase1: bool) -> Fraction {
        let enter_limit = if phase1 { self.n } else { self.first_artificial };
        loop {
            let mut entering = None;
            'cols: for j in 0..enter_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut rj = cost[j].clone();
                for (r, &bv) in self.basis.iter().enumerate() {
                    if !cost[bv].is_zero() && !self.a[r][j].is_zero() {
                        rj -= &(&cost[bv] * &self.a[r][j]);
                    }
                }
                if rj.is_negative() {
                    entering = Some(j);
                    break 'cols;
                }
            }
            let Some(j) = entering else {
                let mut z = Fraction::zero();
                for (r, &bv) in self.basis.iter().enumerate() {
                    if !cost[bv].is_zero() {
                        z += &(&cost[bv] * &self.b[r]);
                    }
                }
                return z;
            };
            let mut leave: Option<(usize, Fraction)> = None;
            for r in 0..self.a.len() {
                if self.a[r][j].is_positive() {
                    let ratio = &self.b[r] / &self.a[r][j];
                    match &leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lv)) => {
                            if ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr]) {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let (r, _) = leave.expect("objective unbounded on the unit box");
            self.pivot(r, j);
        }
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = self.a[r][j].recip();
        for c in 0..self.n {
            self.a[r][c] = &self.a[r][c] * &inv;
        }
        self.b[r] = &self.b[r] * &inv;
        for i in 0..self.a.len() {
            if i != r && !self.a[i][j].is_zero() {
                let f = self.a[i][j].clone();
                for c in 0..self.n {
                    let t = &f * &self.a[r][c];
                    self.a[i][c] -= &t;
                }
                let t = &f * &self.b[r];
                self.b[i] -= &t;
            }
        }
        self.basis[r] = j;
    }

    /// After phase 1, pivot zero-level artificials out of the basis where
    /// possible; rows that stay artificial are redundant constraints.
    fn evict_artificials(&mut self) {
        for r in 0..self.a.len() {
            if self.basis[r] >= self.first_artificial {
                if let Some(j) =
                    (0..self.first_artificial).find(|&j| !self.a[r][j].is_zero())
                {
                    self.pivot(r, j);
                }
            }
        }
    }
}

/// Exact feasibility of a linear-equality system inside the half-open unit
/// box `[0,1)^t`.
///
/// The closed-box polytope is tested by the exact simplex.  When nonempty,
/// the half-open box is met iff no coordinate is forced to equal 1 on all
/// of it: if `min x_i < 1` for every `i`, averaging the minimizers gives a
/// point with all coordinates below 1.
pub fn meets_half_open_unit_box(eqs: &[(Vec<Fraction>, Fraction)], t: usize) -> bool {
    // Cheap path: the canonical solution of the equality system often lies
    // in the box already.
    let rows: Vec<Vec<Fraction>> = eqs.iter().map(|(n, _)| n.clone()).collect();
    let rhs: Vec<Fraction> = eqs.iter().map(|(_, r)| r.clone()).collect();
    let Some(space) = solve_affine(&rows, &rhs) else {
        return false;
    };
    let one = Fraction::one();
    if space.base.iter().all(|x| !x.is_negative() && *x < one) {
        return true;
    }
    let mut lp = BoxProgram::new(t);
    for (normal, r) in eqs {
        lp.add(normal.clone(), Rel::Eq, r.clone());
    }
    if !lp.is_feasible() {
        return false;
    }
    for i in 0..t {
        let mut cost = vec![Fraction::zero(); t];
        cost[i] = Fraction::one();
        let min = lp.minimize(&cost).expect("feasibility already established");
        if min >= one {
            return false;
        }
    }
    true
}
