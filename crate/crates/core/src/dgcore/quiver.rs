use std::collections::{BTreeMap, HashMap};

use crate::exactlin::{ChainComplex, Field, Matrix, Scalar, Vector};

use super::{DgCategory, DgError, HomSpace, ObjId};

pub const DEFAULT_PATH_BOUND: usize = 32;
const MAX_PATHS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub degree: i64,
}

/// `coeff · path`; the path lists arrow names first arrow first. An empty path is the
/// trivial path (only allowed in differentials of loops).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTerm {
    pub coeff: Scalar,
    pub path: Vec<String>,
}

/// A graded quiver with homogeneous relations and an optional differential on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub field: Field,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<PathTerm>>,
    pub differential: BTreeMap<String, Vec<PathTerm>>,
    pub path_bound: usize,
}

impl Quiver {
    pub fn new(field: Field) -> Quiver {
        Quiver {
            field,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            differential: BTreeMap::new(),
            path_bound: DEFAULT_PATH_BOUND,
        }
    }

    pub fn vertex(mut self, name: &str) -> Quiver {
        self.vertices.push(name.to_string());
        self
    }

    pub fn arrow(self, name: &str, src: &str, dst: &str) -> Quiver {
        self.graded_arrow(name, src, dst, 0)
    }

    pub fn graded_arrow(mut self, name: &str, src: &str, dst: &str, degree: i64) -> Quiver {
        self.arrows.push(Arrow { name: name.into(), src: src.into(), dst: dst.into(), degree });
        self
    }

    /// Adds a relation from integer coefficients and paths written `"x0*y1"`.
    pub fn relation(mut self, terms: &[(i64, &str)]) -> Quiver {
        let terms = terms.iter().map(|(c, p)| self.term(*c, p)).collect();
        self.relations.push(terms);
        self
    }

    /// Sets `d(arrow)`; paths as in [`Quiver::relation`], `""` for the trivial path.
    pub fn diff(mut self, arrow: &str, terms: &[(i64, &str)]) -> Quiver {
        let terms = terms.iter().map(|(c, p)| self.term(*c, p)).collect();
        self.differential.insert(arrow.to_string(), terms);
        self
    }

    pub fn with_path_bound(mut self, bound: usize) -> Quiver {
        self.path_bound = bound;
        self
    }

    fn term(&self, c: i64, path: &str) -> PathTerm {
        PathTerm { coeff: self.field.from_i64(c), path: split_path(path) }
    }
}

pub(crate) fn split_path(p: &str) -> Vec<String> {
    p.split('*').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

struct Level {
    paths: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    /// Normal form of each path over the standard monomials of this level.
    nf: Vec<Vec<(usize, Scalar)>>,
    standard: Vec<usize>,
    alive: Vec<usize>,
}

struct Resolved {
    field: Field,
    nv: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    deg: Vec<i64>,
}

impl Resolved {
    fn end(&self, u: usize, path: &[usize]) -> usize {
        path.last().map_or(u, |a| self.dst[*a])
    }

    fn degree(&self, path: &[usize]) -> i64 {
        path.iter().map(|a| self.deg[*a]).sum()
    }
}

/// Path category of a graded quiver modulo homogeneous relations.
pub fn from_quiver(q: &Quiver) -> Result<DgCategory, DgError> {
    let field = q.field;
    let vid: HashMap<&str, usize> = q.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    if vid.len() != q.vertices.len() {
        return Err(DgError::BadQuiver("duplicate vertex".into()));
    }
    let mut aid: HashMap<&str, usize> = HashMap::new();
    let mut r = Resolved { field, nv: q.vertices.len(), src: vec![], dst: vec![], deg: vec![] };
    for (i, a) in q.arrows.iter().enumerate() {
        let s = *vid.get(a.src.as_str()).ok_or_else(|| DgError::BadQuiver(format!("unknown vertex {}", a.src)))?;
        let d = *vid.get(a.dst.as_str()).ok_or_else(|| DgError::BadQuiver(format!("unknown vertex {}", a.dst)))?;
        if aid.insert(a.name.as_str(), i).is_some() {
            return Err(DgError::BadQuiver(format!("duplicate arrow {}", a.name)));
        }
        r.src.push(s);
        r.dst.push(d);
        r.deg.push(a.degree);
    }
    let resolve = |t: &PathTerm| -> Result<Vec<usize>, DgError> {
        field.check(&t.coeff).map_err(|_| DgError::FieldMismatch)?;
        let path: Vec<usize> = t
            .path
            .iter()
            .map(|n| aid.get(n.as_str()).copied().ok_or_else(|| DgError::BadQuiver(format!("unknown arrow {n}"))))
            .collect::<Result<_, _>>()?;
        for w in path.windows(2) {
            if r.dst[w[0]] != r.src[w[1]] {
                return Err(DgError::BadQuiver(format!("path {} is not composable", t.path.join("*"))));
            }
        }
        Ok(path)
    };

    // relations: (start, length, terms)
    let mut rels: Vec<(usize, usize, Vec<(Scalar, Vec<usize>)>)> = Vec::new();
    for rel in &q.relations {
        let terms: Vec<(Scalar, Vec<usize>)> =
            rel.iter().map(|t| Ok((t.coeff.clone(), resolve(t)?))).collect::<Result<_, DgError>>()?;
        let Some((_, first)) = terms.first() else { continue };
        if first.is_empty() {
            return Err(DgError::BadQuiver("relations may not contain trivial paths".into()));
        }
        let (u, v, len, deg) = (r.src[first[0]], r.end(0, first), first.len(), r.degree(first));
        for (_, p) in &terms {
            if p.is_empty() || r.src[p[0]] != u || r.end(0, p) != v {
                return Err(DgError::BadQuiver("relation terms are not parallel".into()));
            }
            if p.len() != len || r.degree(p) != deg {
                return Err(DgError::BadQuiver("relation is not homogeneous in length and degree".into()));
            }
        }
        rels.push((u, len, terms));
    }
    let mut diffs: Vec<Vec<(Scalar, Vec<usize>)>> = vec![Vec::new(); q.arrows.len()];
    for (name, terms) in &q.differential {
        let a = *aid.get(name.as_str()).ok_or_else(|| DgError::BadQuiver(format!("unknown arrow {name}")))?;
        for t in terms {
            let p = resolve(t)?;
            let (s, e) = if p.is_empty() { (r.src[a], r.src[a]) } else { (r.src[p[0]], r.end(0, &p)) };
            if s != r.src[a] || e != r.dst[a] || r.degree(&p) != r.deg[a] + 1 {
                return Err(DgError::BadQuiver(format!("d({name}) has a term of the wrong shape")));
            }
            diffs[a].push((t.coeff.clone(), p));
        }
    }

    let levels = build_levels(&r, &rels, q.path_bound, &q.vertices)?;

    // basis of Hom(u, v)^n: standard monomials by length then lexicographic order
    let mut homs: BTreeMap<(usize, usize), BTreeMap<i64, Vec<Vec<usize>>>> = BTreeMap::new();
    let mut position: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
    for (u, lv) in levels.iter().enumerate() {
        for level in lv {
            for &s in &level.standard {
                let p = &level.paths[s];
                let slot = homs.entry((u, r.end(u, p))).or_default().entry(r.degree(p)).or_default();
                position.insert((u, p.clone()), slot.len());
                slot.push(p.clone());
            }
        }
    }

    // coordinates of an arbitrary path u → v of degree n
    let coords_of = |u: usize, path: &[usize], acc: &mut Vector, c: &Scalar| {
        let Some(level) = levels[u].get(path.len()) else { return };
        let Some(&col) = level.index.get(path) else { return };
        for (s, x) in &level.nf[col] {
            let p = &level.paths[level.standard[*s]];
            acc[position[&(u, p.clone())]] = &acc[position[&(u, p.clone())]] + &(c * x);
        }
    };
    let dim = |u: usize, v: usize, n: i64| homs.get(&(u, v)).and_then(|h| h.get(&n)).map_or(0, Vec::len);

    let mut cat = DgCategory::new(field);
    for v in &q.vertices {
        cat.add_object(v.clone())?;
    }
    let name = |u: usize, p: &[usize]| -> String {
        if p.is_empty() {
            format!("id_{}", q.vertices[u])
        } else {
            p.iter().map(|a| q.arrows[*a].name.as_str()).collect::<Vec<_>>().join("*")
        }
    };
    for (&(u, v), by_deg) in &homs {
        let dims: BTreeMap<i64, usize> = by_deg.iter().map(|(n, ps)| (*n, ps.len())).collect();
        let mut dmats = BTreeMap::new();
        for (&n, ps) in by_deg {
            let rows = dim(u, v, n + 1);
            let mut cols = Vec::with_capacity(ps.len());
            for p in ps {
                let mut out = vec![field.zero(); rows];
                let mut prefix_deg = 0;
                for t in 0..p.len() {
                    let sign = field.one().signed(prefix_deg);
                    for (c, dp) in &diffs[p[t]] {
                        let mut full = p[..t].to_vec();
                        full.extend_from_slice(dp);
                        full.extend_from_slice(&p[t + 1..]);
                        coords_of(u, &full, &mut out, &(&sign * c));
                    }
                    prefix_deg += r.deg[p[t]];
                }
                cols.push(out);
            }
            dmats.insert(n, Matrix::from_columns(field, rows, &cols)?);
        }
        let complex = ChainComplex::new(field, dims, dmats)?;
        let basis = by_deg.iter().map(|(n, ps)| (*n, ps.iter().map(|p| name(u, p)).collect())).collect();
        cat.set_hom(ObjId(u), ObjId(v), HomSpace::new(complex, basis)?)?;
    }
    for (&(u, v), h1) in &homs {
        for (&(v2, w), h2) in homs.range((v, 0)..(v + 1, 0)) {
            debug_assert_eq!(v, v2);
            for (&p, ps) in h1 {
                for (&qd, qs) in h2 {
                    for (i, a) in ps.iter().enumerate() {
                        for (j, b) in qs.iter().enumerate() {
                            let mut full = a.clone();
                            full.extend_from_slice(b);
                            let mut out = vec![field.zero(); dim(u, w, p + qd)];
                            coords_of(u, &full, &mut out, &field.one());
                            cat.set_comp(ObjId(u), ObjId(v), ObjId(w), p, i, qd, j, out)?;
                        }
                    }
                }
            }
        }
    }
    for u in 0..r.nv {
        let mut id = vec![field.zero(); dim(u, u, 0)];
        coords_of(u, &[], &mut id, &field.one());
        cat.set_identity(ObjId(u), id)?;
    }
    Ok(cat)
}

fn build_levels(
    r: &Resolved,
    rels: &[(usize, usize, Vec<(Scalar, Vec<usize>)>)],
    bound: usize,
    names: &[String],
) -> Result<Vec<Vec<Level>>, DgError> {
    let field = r.field;
    let mut out = Vec::new();
    let mut total = 0usize;
    for u in 0..r.nv {
        let mut levels: Vec<Level> = Vec::new();
        let mut ideal_prev: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for len in 0.. {
            let paths: Vec<Vec<usize>> = if len == 0 {
                vec![Vec::new()]
            } else {
                let prev = &levels[len - 1];
                let mut ps = Vec::new();
                for &a in &prev.alive {
                    let p = &prev.paths[a];
                    let e = r.end(u, p);
                    for arrow in (0..r.src.len()).filter(|&x| r.src[x] == e) {
                        let mut np = p.clone();
                        np.push(arrow);
                        ps.push(np);
                    }
                }
                ps
            };
            total += paths.len();
            if total > MAX_PATHS {
                return Err(DgError::BadQuiver(format!("more than {MAX_PATHS} paths enumerated")));
            }
            let index: HashMap<Vec<usize>, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let project = |terms: &mut dyn Iterator<Item = (Scalar, Vec<usize>)>| -> Vec<(usize, Scalar)> {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (c, p) in terms {
                    if let Some(&i) = index.get(&p) {
                        let e = acc.entry(i).or_insert_with(|| field.zero());
                        *e = &*e + &c;
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            };
            // ideal generators of this length
            let mut gens: Vec<Vec<(usize, Scalar)>> = Vec::new();
            if len > 0 {
                let prev = &levels[len - 1];
                for row in &ideal_prev {
                    for arrow in 0..r.src.len() {
                        let mut it = row.iter().filter_map(|(i, c)| {
                            let p = &prev.paths[*i];
                            (r.end(u, p) == r.src[arrow]).then(|| {
                                let mut np = p.clone();
                                np.push(arrow);
                                (c.clone(), np)
                            })
                        });
                        let g = project(&mut it);
                        if !g.is_empty() {
                            gens.push(g);
                        }
                    }
                }
            }
            for (ru, rlen, terms) in rels {
                if *rlen > len {
                    continue;
                }
                let plen = len - rlen;
                let Some(level) = levels.get(plen) else { continue };
                let prefixes: Vec<&Vec<usize>> = if plen == len {
                    Vec::new()
                } else {
                    level.alive.iter().map(|&a| &level.paths[a]).filter(|p| r.end(u, p) == *ru).collect()
                };
                for p in prefixes {
                    let mut it = terms.iter().map(|(c, t)| {
                        let mut np = p.clone();
                        np.extend_from_slice(t);
                        (c.clone(), np)
                    });
                    let g = project(&mut it);
                    if !g.is_empty() {
                        gens.push(g);
                    }
                }
            }
            // reversed columns so pivots land on the latest paths
            let n = paths.len();
            let rows: Vec<Vector> = gens
                .iter()
                .map(|g| {
                    let mut v = vec![field.zero(); n];
                    for (i, c) in g {
                        v[n - 1 - i] = c.clone();
                    }
                    v
                })
                .collect();
            let m = Matrix::from_rows(field, n, &rows)?;
            let rref = m.rref();
            let mut pivot_row: HashMap<usize, usize> = HashMap::new();
            for (k, &pc) in rref.pivots.iter().enumerate() {
                pivot_row.insert(n - 1 - pc, k);
            }
            let standard: Vec<usize> = (0..n).filter(|i| !pivot_row.contains_key(i)).collect();
            let std_pos: HashMap<usize, usize> = standard.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let mut nf = Vec::with_capacity(n);
            let mut alive = Vec::new();
            let mut ideal_rows = Vec::new();
            for i in 0..n {
                match pivot_row.get(&i) {
                    None => {
                        nf.push(vec![(std_pos[&i], field.one())]);
                        alive.push(i);
                    }
                    Some(&k) => {
                        let row = &rref.rows[k];
                        let form: Vec<(usize, Scalar)> = row
                            .iter()
                            .filter(|(c, _)| n - 1 - **c != i)
                            .map(|(c, x)| (std_pos[&(n - 1 - c)], -x))
                            .collect();
                        if !form.is_empty() {
                            alive.push(i);
                        }
                        nf.push(form);
                        ideal_rows.push(row.iter().map(|(c, x)| (n - 1 - c, x.clone())).collect());
                    }
                }
            }
            let done = standard.is_empty();
            if !done && len >= bound {
                let v = r.end(u, &paths[standard[0]]);
                return Err(DgError::InfiniteHom(names[u].clone(), names[v].clone(), len));
            }
            levels.push(Level { paths, index, nf, standard, alive });
            ideal_prev = ideal_rows;
            if done {
                break;
            }
        }
        out.push(levels);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgcore::validate;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn a2() {
        let c = from_quiver(&Quiver::new(q()).vertex("1").vertex("2").arrow("a", "1", "2")).unwrap();
        let (e1, e2) = (c.obj("1").unwrap(), c.obj("2").unwrap());
        assert_eq!(c.hom(e1, e2).basis[&0], vec!["a".to_string()]);
        assert_eq!(c.hom(e1, e1).dim(0), 1);
        assert_eq!(c.hom(e2, e2).dim(0), 1);
        assert!(c.hom(e2, e1).is_zero());
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn beilinson_p2() {
        let mut quiver = Quiver::new(q()).vertex("1").vertex("2").vertex("3");
        for i in 0..3 {
            quiver = quiver.arrow(&format!("x{i}"), "1", "2").arrow(&format!("y{i}"), "2", "3");
        }
        for i in 0..3 {
            for j in i + 1..3 {
                quiver = quiver.relation(&[(1, &format!("x{j}*y{i}")), (-1, &format!("x{i}*y{j}"))]);
            }
        }
        let c = from_quiver(&quiver).unwrap();
        let (e1, e3) = (c.obj("1").unwrap(), c.obj("3").unwrap());
        // oracle: symmetric square of a 3-dimensional space
        assert_eq!(c.hom(e1, e3).dim(0), 3 * 4 / 2);
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn loop_is_infinite() {
        let r = from_quiver(&Quiver::new(q()).vertex("1").arrow("x", "1", "1").with_path_bound(10));
        assert!(matches!(r, Err(DgError::InfiniteHom(_, _, 10))));
    }

    #[test]
    fn nilpotent_loop_with_differential() {
        // x of degree -1 with x^2 = 0
        let c = from_quiver(
            &Quiver::new(q()).vertex("1").graded_arrow("x", "1", "1", -1).relation(&[(1, "x*x")]),
        )
        .unwrap();
        let e = c.obj("1").unwrap();
        assert_eq!(c.hom(e, e).complex.dims(), &BTreeMap::from([(-1, 1), (0, 1)]));
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn acyclic_arrow_pair() {
        // a: 1 → 2 of degree 0, h: 1 → 2 of degree -1 with d(h) = a
        let c = from_quiver(
            &Quiver::new(q()).vertex("1").vertex("2").arrow("a", "1", "2").graded_arrow("h", "1", "2", -1).diff(
                "h",
                &[(1, "a")],
            ),
        )
        .unwrap();
        assert!(validate(&c).is_valid());
        let h = c.hom(c.obj("1").unwrap(), c.obj("2").unwrap());
        assert!(h.complex.cohomology_dims().is_empty());
    }
}
