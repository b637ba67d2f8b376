//! Root systems, Weyl groups and weight combinatorics.
//!
//! Nodes follow Bourbaki labelling. Weights are stored in fundamental-weight
//! coordinates, roots in simple-root coordinates. Every quantity is exact.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!("unknown Lie type family '{other}'"))),
        }
    }
}

/// A simple (connected) Cartan type such as `G2` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidType {
            family: family.to_string(),
            rank,
            reason: reason.to_string(),
        };
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(invalid("no such simple type"));
        }
        if rank > 16 {
            return Err(invalid("rank above 16 is not supported"));
        }
        Ok(SimpleType { family, rank })
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Bourbaki Cartan matrix with `c[i][j] = <alpha_i, alpha_j^vee>`, so that
    /// row `i` holds the fundamental-weight coordinates of `alpha_i`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // alpha_n short
            Family::B => c[n - 2][n - 1] = -2,
            // alpha_n long
            Family::C => c[n - 1][n - 2] = -2,
            // alpha_2 long, alpha_3 short
            Family::F => c[1][2] = -2,
            // alpha_1 short, alpha_2 long
            Family::G => c[1][0] = -3,
            _ => {}
        }
        c
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, tail) = s.split_at(s.chars().next().map(|c| c.len_utf8()).unwrap_or(0));
        let family: Family = head.parse()?;
        let rank: usize = tail
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in type '{s}'")))?;
        SimpleType::new(family, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut v = vec![0; rank];
        v[node] = 1;
        Weight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate '{t}' in '{s}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootLength {
    Long,
    Short,
}

/// A finite root system of a semisimple group together with its Weyl-group
/// action on weights.
///
/// Built either for a simple type ([`build_root_system`]) or from an arbitrary
/// finite-type Cartan matrix ([`RootDatum::from_cartan`]), which is how Levi
/// subsystems are obtained.
#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    components: Vec<(SimpleType, Vec<usize>)>,
    positive_roots: Vec<Vec<i64>>,
    positive_root_weights: Vec<Weight>,
    root_lookup: HashMap<Vec<i64>, usize>,
    root_norms: Vec<i64>,
    root_lengths: Vec<RootLength>,
    form: Vec<Vec<i64>>,
    form_den: i64,
    inv_cartan: Vec<Vec<i64>>,
    inv_den: i64,
    weyl_order: u64,
}

/// Builds the root datum of a simple type with Bourbaki labelling.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootDatum> {
    let ty = SimpleType::new(family, rank)?;
    let mut datum = RootDatum::from_cartan(ty.cartan_matrix())?;
    datum.label = ty.to_string();
    Ok(datum)
}

impl RootDatum {
    /// Builds a datum from a Cartan matrix of finite type (possibly
    /// decomposable). Each connected component must be recognisable as a
    /// Bourbaki-labelled simple type up to node renumbering.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<RootDatum> {
        let rank = cartan.len();
        let bad = |reason: String| Error::InvalidType {
            family: "cartan".into(),
            rank,
            reason,
        };
        if rank == 0 {
            return Err(bad("empty Cartan matrix".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != rank {
                return Err(bad("Cartan matrix is not square".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j && v != 2 {
                    return Err(bad("diagonal entries must be 2".into()));
                }
                if i != j && (v > 0 || (v == 0) != (cartan[j][i] == 0)) {
                    return Err(bad(format!("bad off-diagonal entry at ({i},{j})")));
                }
            }
        }
        let components = diagram_components(&cartan, &(0..rank).collect::<Vec<_>>())
            .into_iter()
            .map(|nodes| classify_component(&cartan, &nodes).map(|t| (t, nodes)))
            .collect::<Result<Vec<_>>>()?;
        let symmetrizer = symmetrizer(&cartan, &components)?;
        let (inv_cartan, inv_den) = integer_inverse(&cartan)
            .ok_or_else(|| bad("Cartan matrix is singular".into()))?;

        // (omega_k, omega_j) = (C^{-1})_{kj} d_j
        let form: Vec<Vec<i64>> = (0..rank)
            .map(|k| (0..rank).map(|j| inv_cartan[k][j] * symmetrizer[j]).collect())
            .collect();
        let mut g = 0i64;
        for row in &form {
            for &v in row {
                g = g.gcd(&v);
            }
        }
        let g = g.gcd(&inv_den).max(1);
        let form: Vec<Vec<i64>> = form
            .iter()
            .map(|r| r.iter().map(|v| v / g).collect())
            .collect();
        let form_den = inv_den / g;

        let positive_roots = root_closure(&cartan);
        let weyl_order = components.iter().map(|(t, _)| t.weyl_order()).product();

        let mut datum = RootDatum {
            label: components
                .iter()
                .map(|(t, _)| t.to_string())
                .collect::<Vec<_>>()
                .join("x"),
            rank,
            cartan,
            symmetrizer,
            components,
            positive_roots: Vec::new(),
            positive_root_weights: Vec::new(),
            root_lookup: HashMap::new(),
            root_norms: Vec::new(),
            root_lengths: Vec::new(),
            form,
            form_den,
            inv_cartan,
            inv_den,
            weyl_order,
        };
        datum.positive_root_weights = positive_roots
            .iter()
            .map(|r| datum.root_to_weight(r))
            .collect();
        datum.root_lookup = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        datum.root_norms = positive_roots.iter().map(|r| datum.root_norm(r)).collect();
        // Lengths are compared within each simple component.
        datum.root_lengths = positive_roots
            .iter()
            .zip(&datum.root_norms)
            .map(|(r, &n)| {
                let comp = datum.component_of_root(r);
                let max = datum
                    .components[comp]
                    .1
                    .iter()
                    .map(|&i| datum.symmetrizer[i])
                    .max()
                    .unwrap_or(1);
                if n == max {
                    RootLength::Long
                } else {
                    RootLength::Short
                }
            })
            .collect();
        datum.positive_roots = positive_roots;
        Ok(datum)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The simple type, when the datum is simple.
    pub fn simple_type(&self) -> Option<SimpleType> {
        match self.components.as_slice() {
            [(t, _)] => Some(*t),
            _ => None,
        }
    }

    pub fn components(&self) -> &[(SimpleType, Vec<usize>)] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `d_i = (alpha_i, alpha_i)/2`, scaled so each component has minimum 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots in simple-root coordinates, ordered by height and then
    /// with simple roots in node order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Positive roots in fundamental-weight coordinates (same order).
    pub fn positive_root_weights(&self) -> &[Weight] {
        &self.positive_root_weights
    }

    pub fn root_lengths(&self) -> &[RootLength] {
        &self.root_lengths
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn positive_root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_lookup.get(coords).copied()
    }

    /// Resolves a root (positive or negative) into `(index, is_negative)`.
    pub fn find_root(&self, coords: &[i64]) -> Option<(usize, bool)> {
        if let Some(i) = self.positive_root_index(coords) {
            return Some((i, false));
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.positive_root_index(&neg).map(|i| (i, true))
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    /// Converts simple-root coordinates to fundamental-weight coordinates.
    pub fn root_to_weight(&self, coords: &[i64]) -> Weight {
        let mut w = vec![0i64; self.rank];
        for (i, &c) in coords.iter().enumerate() {
            if c != 0 {
                for (j, wj) in w.iter_mut().enumerate() {
                    *wj += c * self.cartan[i][j];
                }
            }
        }
        Weight(w)
    }

    /// Simple-root coordinates of a weight, as exact rationals.
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Ratio<i64>> {
        // x = C^T c, so c = (C^{-1})^T x
        (0..self.rank)
            .map(|i| {
                let num: i64 = (0..self.rank).map(|j| self.inv_cartan[j][i] * w.0[j]).sum();
                Ratio::new(num, self.inv_den)
            })
            .collect()
    }

    /// Simple-root coordinates of a weight in the root lattice.
    pub fn weight_to_root_lattice(&self, w: &Weight) -> Option<Vec<i64>> {
        self.weight_to_root_coords(w)
            .into_iter()
            .map(|r| r.is_integer().then(|| r.to_integer()))
            .collect()
    }

    /// Coefficients of `top - w` in simple roots, if `w <= top`.
    pub fn depth_vector(&self, top: &Weight, w: &Weight) -> Option<Vec<i64>> {
        let v = self.weight_to_root_lattice(&top.sub(w))?;
        v.iter().all(|&c| c >= 0).then_some(v)
    }

    /// Height of `top - w`, if `w <= top`.
    pub fn depth(&self, top: &Weight, w: &Weight) -> Option<u32> {
        self.depth_vector(top, w)
            .map(|v| v.iter().sum::<i64>() as u32)
    }

    /// The invariant form on weights, exact.
    pub fn form(&self, x: &Weight, y: &Weight) -> Ratio<i64> {
        Ratio::new(self.form_scaled(x, y), self.form_den)
    }

    /// `form_den * (x, y)`, an integer.
    pub fn form_scaled(&self, x: &Weight, y: &Weight) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            if x.0[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += x.0[i] * self.form[i][j] * y.0[j];
            }
        }
        s
    }

    pub fn form_denominator(&self) -> i64 {
        self.form_den
    }

    /// `(beta, beta)/2` in symmetrizer units for a root in simple coordinates.
    fn root_norm(&self, coords: &[i64]) -> i64 {
        let mut s = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += coords[i] * coords[j] * self.symmetrizer[j] * self.cartan[i][j];
            }
        }
        s / 2
    }

    fn component_of_root(&self, coords: &[i64]) -> usize {
        let i = coords.iter().position(|&c| c != 0).unwrap_or(0);
        self.components
            .iter()
            .position(|(_, nodes)| nodes.contains(&i))
            .unwrap_or(0)
    }

    /// `<w, beta^vee>` for a root `beta` in simple-root coordinates.
    pub fn coroot_pairing(&self, w: &Weight, root: &[i64]) -> i64 {
        let norm = self.root_norm(root);
        let num: i64 = (0..self.rank)
            .map(|i| root[i] * self.symmetrizer[i] * w.0[i])
            .sum();
        debug_assert_eq!(num % norm, 0);
        num / norm
    }

    /// The simple reflection `s_i`.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(
            w.0.iter()
                .zip(&self.cartan[i])
                .map(|(x, a)| x - c * a)
                .collect(),
        )
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                weight: w.to_string(),
                got: w.rank(),
                expected: self.rank,
            });
        }
        Ok(())
    }

    pub fn weyl_group_order(&self) -> u64 {
        self.weyl_order
    }

    /// Order of the parabolic subgroup generated by the simple reflections in
    /// `nodes`.
    pub fn parabolic_weyl_order(&self, nodes: &[usize]) -> u64 {
        diagram_components(&self.cartan, nodes)
            .into_iter()
            .map(|c| {
                classify_component(&self.cartan, &c)
                    .expect("subdiagram of a finite-type diagram is of finite type")
                    .weyl_order()
            })
            .product()
    }

    /// Sub-datum on a subset of nodes (a Levi subsystem), with nodes
    /// renumbered in ascending order.
    pub fn subsystem(&self, nodes: &[usize]) -> Result<RootDatum> {
        let cartan = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.cartan[i][j]).collect())
            .collect();
        RootDatum::from_cartan(cartan)
    }

    /// Full Weyl-group orbit by reflection closure.
    pub fn weyl_orbit(&self, w: &Weight) -> BTreeSet<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank {
                if x.0[i] != 0 {
                    let y = self.reflect(&x, i);
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The dominant weight in the orbit of `w`.
    pub fn dominant_representative(&self, w: &Weight) -> Weight {
        let mut x = w.clone();
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = self.reflect(&x, i);
        }
        x
    }

    /// Dominant representative together with the number of reflections used.
    pub fn dominant_with_parity(&self, w: &Weight) -> (Weight, usize) {
        let mut x = w.clone();
        let mut steps = 0;
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = self.reflect(&x, i);
            steps += 1;
        }
        (x, steps)
    }

    /// Order of the stabiliser of a dominant weight in the Weyl group.
    pub fn weight_stabilizer_order(&self, w: &Weight) -> Result<u64> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        let zeros: Vec<usize> = (0..self.rank).filter(|&i| w.0[i] == 0).collect();
        Ok(self.parabolic_weyl_order(&zeros))
    }

    /// Size of the orbit of a dominant weight.
    pub fn orbit_size(&self, w: &Weight) -> Result<u64> {
        Ok(self.weyl_order / self.weight_stabilizer_order(w)?)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }
}

/// Positive roots by the string-closure algorithm.
fn root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layers: Vec<Vec<Vec<i64>>> = vec![(0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect()];
    all.extend(layers[0].iter().cloned());
    loop {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in layers.last().unwrap() {
            for i in 0..n {
                // <beta, alpha_i^vee> = sum_j beta_j C[j][i]
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut r = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        r += 1;
                    } else {
                        break;
                    }
                }
                let q = r - pairing;
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    roots
}

fn diagram_components(cartan: &[Vec<i64>], nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut comps = Vec::new();
    for &start in nodes {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for &j in nodes {
                if cartan[i][j] != 0 && j != i && seen.insert(j) {
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn classify_component(cartan: &[Vec<i64>], nodes: &[usize]) -> Result<SimpleType> {
    let n = nodes.len();
    let unknown = || Error::InvalidType {
        family: "cartan".into(),
        rank: n,
        reason: "component is not of finite type".into(),
    };
    let mut degree = HashMap::new();
    let mut max_bond = 1;
    let mut double: Option<(usize, usize)> = None;
    let mut edges = 0;
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            if cartan[i][j] != 0 {
                edges += 1;
                *degree.entry(i).or_insert(0) += 1;
                *degree.entry(j).or_insert(0) += 1;
                let m = cartan[i][j] * cartan[j][i];
                max_bond = max_bond.max(m);
                if m == 2 {
                    // (long, short)
                    double = Some(if cartan[i][j] == -2 { (i, j) } else { (j, i) });
                }
            }
        }
    }
    if n > 1 && edges != n - 1 {
        return Err(unknown());
    }
    let deg = |i: usize| *degree.get(&i).unwrap_or(&0);
    let ty = match max_bond {
        1 => {
            let branch: Vec<usize> = nodes.iter().copied().filter(|&i| deg(i) >= 3).collect();
            match branch.as_slice() {
                [] => SimpleType::new(Family::A, n),
                [centre] => {
                    let mut arms: Vec<usize> = nodes
                        .iter()
                        .copied()
                        .filter(|&j| j != *centre && cartan[*centre][j] != 0)
                        .map(|j| arm_length(cartan, nodes, *centre, j))
                        .collect();
                    arms.sort_unstable();
                    match arms.as_slice() {
                        [1, 1, _] => SimpleType::new(Family::D, n),
                        [1, 2, 2] => SimpleType::new(Family::E, 6),
                        [1, 2, 3] => SimpleType::new(Family::E, 7),
                        [1, 2, 4] => SimpleType::new(Family::E, 8),
                        _ => Err(unknown()),
                    }
                }
                _ => Err(unknown()),
            }
        }
        2 => {
            let (long, short) = double.unwrap();
            if n == 4 && deg(long) == 2 && deg(short) == 2 {
                SimpleType::new(Family::F, 4)
            } else if deg(short) == 1 {
                SimpleType::new(Family::B, n)
            } else {
                SimpleType::new(Family::C, n)
            }
        }
        3 if n == 2 => SimpleType::new(Family::G, 2),
        _ => Err(unknown()),
    };
    ty.map_err(|_| unknown())
}

fn arm_length(cartan: &[Vec<i64>], nodes: &[usize], centre: usize, first: usize) -> usize {
    let mut len = 1;
    let mut prev = centre;
    let mut cur = first;
    loop {
        let next: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&j| j != prev && j != cur && cartan[cur][j] != 0)
            .collect();
        match next.as_slice() {
            [j] => {
                prev = cur;
                cur = *j;
                len += 1;
            }
            _ => return len,
        }
    }
}

fn symmetrizer(cartan: &[Vec<i64>], components: &[(SimpleType, Vec<usize>)]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for (_, nodes) in components {
        d[nodes[0]] = Some(Ratio::from_integer(1));
        let mut stack = vec![nodes[0]];
        while let Some(i) = stack.pop() {
            for &j in nodes {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    // d_j C[i][j] = d_i C[j][i]
                    d[j] = Some(d[i].unwrap() * Ratio::new(cartan[j][i], cartan[i][j]));
                    stack.push(j);
                }
            }
        }
        let lcm = nodes
            .iter()
            .fold(1i64, |acc, &i| acc.lcm(d[i].unwrap().denom()));
        for &i in nodes {
            d[i] = Some(d[i].unwrap() * lcm);
        }
    }
    let d: Vec<i64> = d.into_iter().map(|x| x.unwrap().to_integer()).collect();
    for i in 0..n {
        for j in 0..n {
            if d[j] * cartan[i][j] != d[i] * cartan[j][i] {
                return Err(Error::InvalidType {
                    family: "cartan".into(),
                    rank: n,
                    reason: "Cartan matrix is not symmetrisable".into(),
                });
            }
        }
    }
    Ok(d)
}

/// Returns `(adj, det)` with `C^{-1} = adj / det`, `det > 0`.
fn integer_inverse(c: &[Vec<i64>]) -> Option<(Vec<Vec<i64>>, i64)> {
    let n = c.len();
    let mut a: Vec<Vec<Ratio<i64>>> = c
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(if i == j { 1 } else { 0 }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Ratio::from_integer(0))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::from_integer(0) {
                let f = a[r][col];
                for j in 0..n {
                    let (x, y) = (a[col][j], inv[col][j]);
                    a[r][j] -= f * x;
                    inv[r][j] -= f * y;
                }
            }
        }
    }
    let den = inv
        .iter()
        .flatten()
        .fold(1i64, |acc, x| acc.lcm(x.denom()));
    let adj = inv
        .iter()
        .map(|r| r.iter().map(|x| (x * den).to_integer()).collect())
        .collect();
    Some((adj, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> RootDatum {
        build_root_system(Family::G, 2).unwrap()
    }

    #[test]
    fn g2_roots_and_labelling() {
        let d = g2();
        assert_eq!(d.num_positive_roots(), 6);
        assert!(d.positive_root_index(&[2, 1]).is_some());
        assert!(d.positive_root_index(&[3, 2]).is_some());
        assert_eq!(d.positive_roots()[0], vec![1, 0]);
        assert_eq!(d.positive_roots()[1], vec![0, 1]);
        // alpha_1 short
        assert_eq!(d.root_lengths()[0], RootLength::Short);
        assert_eq!(d.root_lengths()[1], RootLength::Long);
        // highest short root is omega_1, highest root omega_2
        assert_eq!(d.root_to_weight(&[2, 1]), Weight(vec![1, 0]));
        assert_eq!(d.root_to_weight(&[3, 2]), Weight(vec![0, 1]));
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Family::A, 1, 1),
            (Family::A, 4, 10),
            (Family::B, 3, 9),
            (Family::C, 4, 16),
            (Family::D, 5, 20),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
            (Family::F, 4, 24),
            (Family::G, 2, 6),
        ];
        for (f, n, count) in cases {
            let d = build_root_system(f, n).unwrap();
            assert_eq!(d.num_positive_roots(), count, "{f}{n}");
            assert_eq!(d.simple_type(), Some(SimpleType { family: f, rank: n }));
        }
    }

    #[test]
    fn a1_cartan() {
        let d = build_root_system(Family::A, 1).unwrap();
        assert_eq!(d.cartan(), &[vec![2]]);
        assert_eq!(d.num_positive_roots(), 1);
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(build_root_system(Family::G, 3).is_err());
        assert!(build_root_system(Family::E, 5).is_err());
        assert!(build_root_system(Family::D, 3).is_err());
        assert!(build_root_system(Family::A, 0).is_err());
        assert!("X3".parse::<SimpleType>().is_err());
        assert_eq!("E8".parse::<SimpleType>().unwrap().rank, 8);
    }

    #[test]
    fn orbits_and_stabilisers() {
        let d = g2();
        assert_eq!(d.weyl_orbit(&Weight(vec![1, 0])).len(), 6);
        assert_eq!(d.weyl_orbit(&Weight(vec![0, 0])).len(), 1);
        assert_eq!(d.weight_stabilizer_order(&Weight(vec![0, 0])).unwrap(), 12);
        assert_eq!(d.weight_stabilizer_order(&Weight(vec![1, 0])).unwrap(), 2);
        assert!(d.weight_stabilizer_order(&Weight(vec![-1, 0])).is_err());
        assert_eq!(
            d.dominant_representative(&Weight(vec![-1, 0])),
            Weight(vec![1, 0])
        );

        let a1 = build_root_system(Family::A, 1).unwrap();
        let orbit = a1.weyl_orbit(&Weight(vec![3]));
        assert_eq!(
            orbit.into_iter().collect::<Vec<_>>(),
            vec![Weight(vec![-3]), Weight(vec![3])]
        );
        assert_eq!(a1.dominant_representative(&Weight(vec![-5])), Weight(vec![5]));

        let e8 = build_root_system(Family::E, 8).unwrap();
        let w8 = Weight::fundamental(8, 7);
        assert_eq!(e8.weight_stabilizer_order(&w8).unwrap(), 2_903_040);
        assert_eq!(e8.orbit_size(&w8).unwrap(), 240);
    }

    #[test]
    fn levi_subsystem_types() {
        let f4 = build_root_system(Family::F, 4).unwrap();
        let b3 = f4.subsystem(&[0, 1, 2]).unwrap();
        assert_eq!(b3.simple_type(), Some(SimpleType { family: Family::B, rank: 3 }));
        let c3 = f4.subsystem(&[1, 2, 3]).unwrap();
        assert_eq!(c3.simple_type(), Some(SimpleType { family: Family::C, rank: 3 }));
        let e6 = build_root_system(Family::E, 6).unwrap();
        let d5 = e6.subsystem(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(d5.simple_type(), Some(SimpleType { family: Family::D, rank: 5 }));
        let split = e6.subsystem(&[0, 1, 4, 5]).unwrap();
        assert_eq!(split.components().len(), 3);
        assert_eq!(split.weyl_group_order(), 2 * 2 * 6);
    }

    #[test]
    fn form_is_symmetric_and_roots_have_expected_norms() {
        let d = g2();
        let a1 = d.simple_root_weight(0);
        let a2 = d.simple_root_weight(1);
        assert_eq!(d.form(&a2, &a2), d.form(&a1, &a1) * 3);
        assert_eq!(d.form(&a1, &a2), d.form(&a2, &a1));
        assert_eq!(d.coroot_pairing(&Weight(vec![1, 0]), &[2, 1]), 2);
        assert_eq!(d.coroot_pairing(&Weight(vec![0, 1]), &[3, 2]), 2);
    }

    #[test]
    fn depth_of_weights() {
        let d = g2();
        let top = Weight(vec![1, 0]);
        assert_eq!(d.depth(&top, &Weight(vec![0, 0])), Some(3));
        assert_eq!(d.depth(&top, &Weight(vec![-1, 0])), Some(6));
        assert_eq!(d.depth(&Weight(vec![0, 0]), &top), None);
    }
}
