use std::cell::RefCell;
use std::collections::{HashMap, VecDeque};
use std::fs;
use std::path::Path;

use super::TaxonomyError;

/// Dense index of a concept inside a [`Taxonomy`].
pub type ConceptIdx = usize;

/// A rooted is-a DAG with cached per-node statistics.
///
/// Node identifiers are matched case-insensitively.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    names: Vec<String>,
    index: HashMap<String, ConceptIdx>,
    parents: Vec<Vec<ConceptIdx>>,
    children: Vec<Vec<ConceptIdx>>,
    depth: Vec<u32>,
    leaves: Vec<u32>,
    subsumers: Vec<u32>,
    root: ConceptIdx,
    max_depth: u32,
    total_leaves: u32,
}

/// Reusable BFS/DFS bookkeeping; one per thread.
#[derive(Default)]
struct Scratch {
    stamp: Vec<u32>,
    dist: Vec<u32>,
    generation: u32,
    queue: VecDeque<ConceptIdx>,
}

impl Scratch {
    /// Starts a traversal. Marks `g` and `g + 1` are both fresh for the caller.
    fn begin(&mut self, n: usize) -> u32 {
        if self.stamp.len() < n {
            self.stamp.resize(n, 0);
            self.dist.resize(n, 0);
        }
        if self.generation >= u32::MAX - 2 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 0;
        }
        self.generation += 2;
        self.queue.clear();
        self.generation - 1
    }
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::default());
}

impl Taxonomy {
    /// Reads a `child<TAB>parent` edge file. A line holding a single name declares a node.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, TaxonomyError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| TaxonomyError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, TaxonomyError> {
        let mut edges = Vec::new();
        let mut nodes = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            match fields.as_slice() {
                [node] => nodes.push(node.to_string()),
                [child, parent] if !child.is_empty() && !parent.is_empty() => {
                    edges.push((child.to_string(), parent.to_string()))
                }
                _ => {
                    return Err(TaxonomyError::Parse {
                        line: idx + 1,
                        message: "expected `child<TAB>parent`".into(),
                    })
                }
            }
        }
        Self::from_edges(nodes, edges)
    }

    /// Builds a taxonomy from `(child, parent)` pairs plus optional isolated declarations.
    pub fn from_edges<I, S>(nodes: I, edges: Vec<(S, S)>) -> Result<Self, TaxonomyError>
    where
        I: IntoIterator<Item = String>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut index: HashMap<String, ConceptIdx> = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> ConceptIdx {
            let key = name.to_lowercase();
            *index.entry(key).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            })
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for n in nodes {
            intern(&n, &mut names);
        }
        for (c, p) in &edges {
            let c = intern(c.as_ref(), &mut names);
            let p = intern(p.as_ref(), &mut names);
            pairs.push((c, p));
        }
        let n = names.len();
        if n == 0 {
            return Err(TaxonomyError::Empty);
        }
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        for (c, p) in pairs {
            if c == p {
                return Err(TaxonomyError::Cycle(names[c].clone()));
            }
            if !parents[c].contains(&p) {
                parents[c].push(p);
                children[p].push(c);
            }
        }

        // Kahn's algorithm from the parentless nodes
        let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
        let roots: Vec<ConceptIdx> = (0..n).filter(|&i| pending[i] == 0).collect();
        let mut queue: VecDeque<ConceptIdx> = roots.iter().copied().collect();
        let mut seen = 0;
        while let Some(u) = queue.pop_front() {
            seen += 1;
            for &c in &children[u] {
                pending[c] -= 1;
                if pending[c] == 0 {
                    queue.push_back(c);
                }
            }
        }
        if seen < n {
            let culprit = (0..n).find(|&i| pending[i] > 0).unwrap();
            return Err(TaxonomyError::Cycle(names[culprit].clone()));
        }
        if roots.len() > 1 {
            return Err(TaxonomyError::MultipleRoots(
                roots.iter().map(|&r| names[r].clone()).collect(),
            ));
        }
        let root = roots[0];

        let mut depth = vec![u32::MAX; n];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &c in &children[u] {
                if depth[c] == u32::MAX {
                    depth[c] = depth[u] + 1;
                    queue.push_back(c);
                }
            }
        }
        let max_depth = depth.iter().copied().max().unwrap_or(0);

        let mut tax = Taxonomy {
            names,
            index,
            parents,
            children,
            depth,
            leaves: vec![0; n],
            subsumers: vec![0; n],
            root,
            max_depth,
            total_leaves: 0,
        };
        for c in 0..n {
            let ancestors = tax.ancestor_indices(c);
            tax.subsumers[c] = ancestors.len() as u32;
            if tax.children[c].is_empty() {
                tax.total_leaves += 1;
                for a in ancestors {
                    tax.leaves[a] += 1;
                }
            }
        }
        Ok(tax)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn root(&self) -> ConceptIdx {
        self.root
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    pub fn total_leaves(&self) -> u32 {
        self.total_leaves
    }

    pub fn lookup(&self, name: &str) -> Option<ConceptIdx> {
        self.index.get(&name.to_lowercase()).copied()
    }

    pub fn require(&self, name: &str) -> Result<ConceptIdx, TaxonomyError> {
        self.lookup(name)
            .ok_or_else(|| TaxonomyError::UnknownConcept(name.to_string()))
    }

    pub fn name(&self, c: ConceptIdx) -> &str {
        &self.names[c]
    }

    pub fn parents(&self, c: ConceptIdx) -> &[ConceptIdx] {
        &self.parents[c]
    }

    pub fn children(&self, c: ConceptIdx) -> &[ConceptIdx] {
        &self.children[c]
    }

    /// Shortest distance to the root along is-a links.
    pub fn depth(&self, c: ConceptIdx) -> u32 {
        self.depth[c]
    }

    /// Number of distinct leaves at or below `c`.
    pub fn leaves(&self, c: ConceptIdx) -> u32 {
        self.leaves[c]
    }

    /// Number of distinct ancestors of `c`, itself included.
    pub fn subsumers(&self, c: ConceptIdx) -> u32 {
        self.subsumers[c]
    }

    /// Ancestors of `c` including `c`, in discovery order.
    pub fn ancestor_indices(&self, c: ConceptIdx) -> Vec<ConceptIdx> {
        SCRATCH.with(|s| {
            let mut s = s.borrow_mut();
            let g = s.begin(self.len());
            let mut out = vec![c];
            s.stamp[c] = g;
            let mut i = 0;
            while i < out.len() {
                let u = out[i];
                for &p in &self.parents[u] {
                    if s.stamp[p] != g {
                        s.stamp[p] = g;
                        out.push(p);
                    }
                }
                i += 1;
            }
            out
        })
    }

    /// Shortest path length, treating is-a links as undirected, between any concept of
    /// `from` and any concept of `to`. `None` only when either slice is empty.
    pub fn min_path_len(&self, from: &[ConceptIdx], to: &[ConceptIdx]) -> Option<u32> {
        if from.is_empty() || to.is_empty() {
            return None;
        }
        if from.iter().any(|c| to.contains(c)) {
            return Some(0);
        }
        SCRATCH.with(|s| {
            let mut s = s.borrow_mut();
            let g = s.begin(self.len());
            // targets carry a distinct mark so the search stops on first contact
            let target_mark = g + 1;
            let Scratch { stamp, dist, queue, .. } = &mut *s;
            for &t in to {
                stamp[t] = target_mark;
            }
            for &f in from {
                stamp[f] = g;
                dist[f] = 0;
                queue.push_back(f);
            }
            while let Some(u) = queue.pop_front() {
                let d = dist[u] + 1;
                for &v in self.parents[u].iter().chain(&self.children[u]) {
                    if stamp[v] == target_mark {
                        return Some(d);
                    }
                    if stamp[v] != g {
                        stamp[v] = g;
                        dist[v] = d;
                        queue.push_back(v);
                    }
                }
            }
            None
        })
    }

    pub fn shortest_path_len(&self, c1: &str, c2: &str) -> Result<u32, TaxonomyError> {
        let a = self.require(c1)?;
        let b = self.require(c2)?;
        Ok(self.min_path_len(&[a], &[b]).expect("taxonomy is connected"))
    }
}
