//! Reduction gadgets: `G_α`, `G_{t,α}`, pendant attachment, `H_{a/b}` and its
//! minimized form `H'_{a/b}`, gluing, and clique blow-up.
//!
//! Vertex numbering is fixed so outputs are reproducible: host-derived `V`
//! blocks first, then `U`, then `W`; pendants and glued copies follow the
//! host vertices in host index order. All role indices are 0-based.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::ExactRational;
use crate::solver::{self, Budget};

/// What a gadget vertex stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// `v_{i,k}`: vertex `k` of the clique block for host vertex `i`.
    V { block: usize, index: usize },
    /// Vertex `slot` of the `U_{i,j}` block.
    U { host: usize, group: usize, slot: usize },
    /// `w_{j,l}`.
    W { group: usize, index: usize },
    Pendant { host: usize, index: usize },
    Host(usize),
    /// Copy of vertex `original` of the glued graph, attached at `host`.
    GlueCopy { host: usize, original: usize },
}

impl Role {
    pub fn kind(&self) -> &'static str {
        match self {
            Role::V { .. } => "V",
            Role::U { .. } => "U",
            Role::W { .. } => "W",
            Role::Pendant { .. } => "Pendant",
            Role::Host(_) => "Host",
            Role::GlueCopy { .. } => "GlueCopy",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::V { block, index } => write!(f, "V({block},{index})"),
            Role::U { host, group, slot } => write!(f, "U({host},{group},{slot})"),
            Role::W { group, index } => write!(f, "W({group},{index})"),
            Role::Pendant { host, index } => write!(f, "Pendant({host},{index})"),
            Role::Host(i) => write!(f, "Host({i})"),
            Role::GlueCopy { host, original } => write!(f, "GlueCopy({host},{original})"),
        }
    }
}

/// One role per vertex, indexed by vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetLabeling {
    roles: Vec<Role>,
}

impl GadgetLabeling {
    pub fn role_of(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.roles.iter().filter(|r| r.kind() == kind).count()
    }

    pub fn vertices_of(&self, kind: &str) -> Vec<usize> {
        (0..self.roles.len()).filter(|&v| self.roles[v].kind() == kind).collect()
    }
}

/// Sidecar form: `{ "roles": { "0": "V(0,0)", ... } }` in vertex order.
impl Serialize for GadgetLabeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Roles<'a>(&'a [Role]);
        impl Serialize for Roles<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (v, role) in self.0.iter().enumerate() {
                    map.serialize_entry(&v.to_string(), &role.to_string())?;
                }
                map.end()
            }
        }
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("roles", &Roles(&self.roles))?;
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    pub graph: Graph,
    pub labeling: GadgetLabeling,
}

fn require_connected(g: &Graph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Domain("host graph must be connected and nonempty".into()));
    }
    Ok(())
}

fn require_positive(name: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(())
}

/// `G_α`: a clique `V_i` of size α per host vertex, complete bipartite
/// `(V_i; V_j)` per host edge, a pendant-like `u_{i,j}` on each `v_{i,j}`,
/// and `w_j` adjacent to `u_{1,j}, ..., u_{n,j}`.
pub fn build_g_alpha(g: &Graph, alpha: usize) -> Result<Gadget> {
    require_connected(g)?;
    require_positive("alpha", alpha)?;
    let n = g.n();
    let v_at = |i: usize, j: usize| i * alpha + j;
    let u_at = |i: usize, j: usize| n * alpha + i * alpha + j;
    let w_at = |j: usize| 2 * n * alpha + j;

    let mut out = Graph::new(2 * n * alpha + alpha);
    let mut roles = Vec::with_capacity(out.n());
    for i in 0..n {
        for j in 0..alpha {
            roles.push(Role::V { block: i, index: j });
            for k in j + 1..alpha {
                out.add_edge(v_at(i, j), v_at(i, k))?;
            }
        }
    }
    for (i, k) in g.edges() {
        for j in 0..alpha {
            for l in 0..alpha {
                out.add_edge(v_at(i, j), v_at(k, l))?;
            }
        }
    }
    for i in 0..n {
        for j in 0..alpha {
            roles.push(Role::U { host: i, group: j, slot: 0 });
            out.add_edge(u_at(i, j), v_at(i, j))?;
            out.add_edge(u_at(i, j), w_at(j))?;
        }
    }
    roles.extend((0..alpha).map(|j| Role::W { group: j, index: 0 }));
    Ok(Gadget {
        graph: out,
        labeling: GadgetLabeling { roles },
    })
}

/// `G_{t,α}`: cliques `V_i` of size `tα`, complete bipartite `(V_i; V_j)`
/// per host edge, `t`-cliques `U_{i,j}` perfectly matched to `V_i`, and
/// `W_j` of size `t` completely joined to every `U_{i,j}`.
///
/// `v_{i, j·t + s}` is matched to slot `s` of `U_{i,j}`.
pub fn build_g_t_alpha(g: &Graph, t: usize, alpha: usize) -> Result<Gadget> {
    require_connected(g)?;
    require_positive("t", t)?;
    require_positive("alpha", alpha)?;
    let n = g.n();
    if n < t {
        return Err(Error::Domain(format!("host needs at least t={t} vertices, has {n}")));
    }
    let block = t * alpha;
    let v_at = |i: usize, k: usize| i * block + k;
    let u_at = |i: usize, j: usize, s: usize| n * block + i * block + j * t + s;
    let w_at = |j: usize, l: usize| 2 * n * block + j * t + l;

    let mut out = Graph::new(2 * n * block + block);
    let mut roles = Vec::with_capacity(out.n());
    for i in 0..n {
        for k in 0..block {
            roles.push(Role::V { block: i, index: k });
            for k2 in k + 1..block {
                out.add_edge(v_at(i, k), v_at(i, k2))?;
            }
        }
    }
    for (i, i2) in g.edges() {
        for k in 0..block {
            for k2 in 0..block {
                out.add_edge(v_at(i, k), v_at(i2, k2))?;
            }
        }
    }
    for i in 0..n {
        for j in 0..alpha {
            for s in 0..t {
                roles.push(Role::U { host: i, group: j, slot: s });
                out.add_edge(u_at(i, j, s), v_at(i, j * t + s))?;
                for s2 in s + 1..t {
                    out.add_edge(u_at(i, j, s), u_at(i, j, s2))?;
                }
                for l in 0..t {
                    out.add_edge(u_at(i, j, s), w_at(j, l))?;
                }
            }
        }
    }
    for j in 0..alpha {
        roles.extend((0..t).map(|l| Role::W { group: j, index: l }));
    }
    Ok(Gadget {
        graph: out,
        labeling: GadgetLabeling { roles },
    })
}

/// Gives every host vertex `b - 1` new leaves. Equals `G ⊕_v K_{1,b}`.
pub fn attach_pendants(g: &Graph, b: usize) -> Result<Gadget> {
    require_connected(g)?;
    if b < 2 {
        return Err(Error::InvalidParameter(format!("b must be at least 2, got {b}")));
    }
    let n = g.n();
    let mut out = Graph::from_edges(n * b, g.edges())?;
    let mut roles: Vec<Role> = (0..n).map(Role::Host).collect();
    for i in 0..n {
        for p in 0..b - 1 {
            let leaf = n + i * (b - 1) + p;
            out.add_edge(i, leaf)?;
            roles.push(Role::Pendant { host: i, index: p });
        }
    }
    Ok(Gadget {
        graph: out,
        labeling: GadgetLabeling { roles },
    })
}

fn check_h_params(a: usize, b: usize) -> Result<()> {
    if a == 0 || b < 2 * a {
        return Err(Error::InvalidParameter(format!("need 1 ≤ a and b ≥ 2a, got a={a}, b={b}")));
    }
    if num_integer::gcd(a, b) != 1 {
        return Err(Error::InvalidParameter(format!("a={a} and b={b} are not coprime")));
    }
    Ok(())
}

/// `H_{a/b}`: clique `V = {v_1..v_a}`, independent `U = {u_1..u_{b-a}}`
/// joined to all of `V`, and leaves `w_i` on `v_i` for `i ∈ [a]`.
/// Toughness is exactly `a/b`.
pub fn build_h(a: usize, b: usize) -> Result<Gadget> {
    check_h_params(a, b)?;
    let mut g = Graph::new(a + b);
    let mut roles = Vec::with_capacity(a + b);
    for i in 0..a {
        roles.push(Role::V { block: 0, index: i });
        for j in i + 1..a {
            g.add_edge(i, j)?;
        }
        for u in a..b {
            g.add_edge(i, u)?;
        }
        g.add_edge(i, b + i)?;
    }
    roles.extend((0..b - a).map(|s| Role::U { host: 0, group: 0, slot: s }));
    roles.extend((0..a).map(|i| Role::W { group: 0, index: i }));
    Ok(Gadget {
        graph: g,
        labeling: GadgetLabeling { roles },
    })
}

/// Order in which the greedy minimization scans edges.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EdgeOrder {
    #[default]
    Lexicographic,
    ReverseLexicographic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub graph: Graph,
    /// Deleted edges, in deletion order.
    pub trace: Vec<(usize, usize)>,
}

/// Greedily deletes edges whose removal keeps the graph `t`-tough,
/// restarting the scan after each deletion, until no edge can go.
///
/// Requires `τ(h) = t`; the result is then minimally `t`-tough.
pub fn minimize_to_h_prime(h: &Graph, t: &ExactRational) -> Result<Minimized> {
    minimize_with_order(h, t, EdgeOrder::Lexicographic)
}

pub fn minimize_with_order(h: &Graph, t: &ExactRational, order: EdgeOrder) -> Result<Minimized> {
    let budget = Budget::unlimited();
    if solver::toughness_equals(h, t, &budget)?.is_none() {
        return Err(Error::Domain(format!("minimization needs a graph of toughness exactly {t}")));
    }
    let mut graph = h.clone();
    let mut trace = Vec::new();
    'scan: loop {
        let mut edges: Vec<_> = graph.edges().collect();
        if order == EdgeOrder::ReverseLexicographic {
            edges.reverse();
        }
        for (u, v) in edges {
            let candidate = graph.delete_edge(u, v)?;
            if solver::is_t_tough_within(&candidate, t, &budget)?.is_tough() {
                graph = candidate;
                trace.push((u, v));
                continue 'scan;
            }
        }
        break;
    }
    Ok(Minimized { graph, trace })
}

/// `H'_{a/b}`: the minimized `H_{a/b}` with the `H_{a/b}` labeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPrime {
    pub gadget: Gadget,
    pub trace: Vec<(usize, usize)>,
}

impl HPrime {
    /// The glue point: the lowest-index `U` vertex of degree 1, or failing
    /// that the lowest-index `W` leaf. Once `a/b > 1/3` no `U` vertex can be
    /// a leaf, since removing its neighbor would leave three components.
    /// A `W` leaf serves equally: its neighbor lies in the tough set `V`.
    pub fn glue_vertex(&self) -> Option<usize> {
        let g = &self.gadget.graph;
        let labels = &self.gadget.labeling;
        labels
            .vertices_of("U")
            .into_iter()
            .chain(labels.vertices_of("W"))
            .find(|&u| g.degree(u) == 1)
    }
}

/// Builds and minimizes `H_{a/b}`, then checks that every `W` vertex still
/// hangs off its `v_i` alone and that `V` is a tough set.
pub fn build_h_prime(a: usize, b: usize) -> Result<HPrime> {
    build_h_prime_with_order(a, b, EdgeOrder::Lexicographic)
}

pub fn build_h_prime_with_order(a: usize, b: usize, order: EdgeOrder) -> Result<HPrime> {
    let h = build_h(a, b)?;
    let t = ExactRational::frac(a as u64, b as u64);
    let Minimized { graph, trace } = minimize_with_order(&h.graph, &t, order)?;
    let labeling = h.labeling;

    for (i, w) in labeling.vertices_of("W").into_iter().enumerate() {
        if graph.degree(w) != 1 || !graph.has_edge(i, w) {
            return Err(Error::Domain(format!("H' postcondition: w_{i} lost its single edge to v_{i}")));
        }
    }
    let v_set = labeling.vertices_of("V");
    if graph.components_after_removal(&v_set) != b {
        return Err(Error::Domain("H' postcondition: V is not a tough set".into()));
    }
    Ok(HPrime {
        gadget: Gadget { graph, labeling },
        trace,
    })
}

/// `G ⊕_v H`: for every host vertex `x`, a fresh copy of `H - u` whose copy
/// of `v` (the unique neighbor of `u`) is identified with `x`.
pub fn glue(g: &Graph, h: &Graph, u: usize) -> Result<Gadget> {
    if u >= h.n() {
        return Err(Error::InvalidVertex { vertex: u, n: h.n() });
    }
    if h.degree(u) != 1 {
        return Err(Error::Domain(format!("glue vertex {u} has degree {}, expected 1", h.degree(u))));
    }
    let v = h.neighbors(u).next().expect("degree 1");
    let n = g.n();
    let copied: Vec<usize> = (0..h.n()).filter(|&y| y != u && y != v).collect();

    let mut out = Graph::from_edges(n + n * copied.len(), g.edges())?;
    let mut roles: Vec<Role> = (0..n).map(Role::Host).collect();
    let mut place = vec![usize::MAX; h.n()];
    for x in 0..n {
        place[v] = x;
        for (slot, &y) in copied.iter().enumerate() {
            place[y] = n + x * copied.len() + slot;
            roles.push(Role::GlueCopy { host: x, original: y });
        }
        for (p, q) in h.edges() {
            if p != u && q != u {
                out.add_edge(place[p], place[q])?;
            }
        }
    }
    Ok(Gadget {
        graph: out,
        labeling: GadgetLabeling { roles },
    })
}

/// `G ⊕_v H'_{a/b}` glued at the lowest-index degree-1 `U` vertex of `H'`.
pub fn glue_h_prime(g: &Graph, a: usize, b: usize) -> Result<Gadget> {
    let hp = build_h_prime(a, b)?;
    glue_with(g, &hp)
}

pub fn glue_with(g: &Graph, hp: &HPrime) -> Result<Gadget> {
    let u = hp
        .glue_vertex()
        .ok_or_else(|| Error::Domain("H' has no degree-1 vertex in U or W".into()))?;
    glue(g, &hp.gadget.graph, u)
}

/// Replaces `v` by a clique of `size` vertices, each adjacent to every
/// former neighbor of `v`. `v` keeps its index; the other clique vertices
/// are appended.
pub fn blow_up(g: &Graph, v: usize, size: usize) -> Result<Graph> {
    if v >= g.n() {
        return Err(Error::InvalidVertex { vertex: v, n: g.n() });
    }
    require_positive("size", size)?;
    let mut out = g.clone();
    let neighbors: Vec<usize> = g.neighbors(v).collect();
    let mut clique = vec![v];
    for _ in 1..size {
        let c = out.add_vertex();
        for &x in &neighbors {
            out.add_edge(c, x)?;
        }
        for &y in &clique {
            out.add_edge(c, y)?;
        }
        clique.push(c);
    }
    Ok(out)
}
