//! Ordered trees with round (accepting) and square (rejecting) nodes.

use crate::error::{Error, Result};

/// A node of an [`OrderedTree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node<L> {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub round: bool,
    pub depth: usize,
    pub label: L,
}

/// A finite tree with ordered children; node `0` is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTree<L> {
    nodes: Vec<Node<L>>,
}

/// Shape flags of a tree or subtree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Shape {
    /// Every round node has at most one child.
    pub rabin: bool,
    /// Every square node has at most one child.
    pub streett: bool,
    /// Both of the above: the tree is a single branch.
    pub parity: bool,
    /// Height at most 2, and a round root when the height is 2.
    pub gen_buchi: bool,
    /// Height at most 2, and a square root when the height is 2.
    pub gen_cobuchi: bool,
}

impl<L> OrderedTree<L> {
    pub fn new(root_label: L, round: bool) -> Self {
        OrderedTree {
            nodes: vec![Node {
                parent: None,
                children: Vec::new(),
                round,
                depth: 0,
                label: root_label,
            }],
        }
    }

    /// Append a child as the last child of `parent`.
    pub fn add_child(&mut self, parent: usize, label: L, round: bool) -> usize {
        let id = self.nodes.len();
        let depth = self.nodes[parent].depth + 1;
        self.nodes.push(Node {
            parent: Some(parent),
            children: Vec::new(),
            round,
            depth,
            label,
        });
        self.nodes[parent].children.push(id);
        id
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, n: usize) -> &Node<L> {
        &self.nodes[n]
    }

    pub fn nodes(&self) -> &[Node<L>] {
        &self.nodes
    }

    pub fn label(&self, n: usize) -> &L {
        &self.nodes[n].label
    }

    pub fn children(&self, n: usize) -> &[usize] {
        &self.nodes[n].children
    }

    pub fn parent(&self, n: usize) -> Option<usize> {
        self.nodes[n].parent
    }

    pub fn is_round(&self, n: usize) -> bool {
        self.nodes[n].round
    }

    pub fn depth(&self, n: usize) -> usize {
        self.nodes[n].depth
    }

    pub fn is_leaf(&self, n: usize) -> bool {
        self.nodes[n].children.is_empty()
    }

    /// Number of levels: one more than the largest depth.
    pub fn height(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0) + 1
    }

    /// Whether `a` is an ancestor of (or equal to) `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut x = Some(b);
        while let Some(y) = x {
            if y == a {
                return true;
            }
            if self.nodes[y].depth < self.nodes[a].depth {
                return false;
            }
            x = self.nodes[y].parent;
        }
        false
    }

    /// Nodes from the root down to `n`.
    pub fn branch(&self, n: usize) -> Vec<usize> {
        let mut b = vec![n];
        let mut x = n;
        while let Some(p) = self.nodes[x].parent {
            b.push(p);
            x = p;
        }
        b.reverse();
        b
    }

    /// The deepest ancestor of `l` (possibly `l`) whose label satisfies
    /// `member`.
    pub fn supp(&self, l: usize, member: impl Fn(&L) -> bool) -> Result<usize> {
        let mut x = Some(l);
        while let Some(y) = x {
            if member(&self.nodes[y].label) {
                return Ok(y);
            }
            x = self.nodes[y].parent;
        }
        Err(Error::RootFails)
    }

    pub fn full(&self) -> Subtree<'_, L> {
        Subtree {
            tree: self,
            kept: vec![true; self.nodes.len()],
        }
    }

    /// Subtree keeping the nodes flagged in `kept`, which must be closed
    /// under ancestors and contain the root.
    pub fn subtree(&self, kept: Vec<bool>) -> Result<Subtree<'_, L>> {
        if kept.len() != self.nodes.len() || !kept[0] {
            return Err(Error::Invalid("subtree must keep the root".into()));
        }
        for (n, node) in self.nodes.iter().enumerate() {
            if kept[n] {
                if let Some(p) = node.parent {
                    if !kept[p] {
                        return Err(Error::Invalid("subtree is not closed under ancestors".into()));
                    }
                }
            }
        }
        Ok(Subtree { tree: self, kept })
    }

    pub fn map_labels<M>(&self, f: impl Fn(&L) -> M) -> OrderedTree<M> {
        OrderedTree {
            nodes: self
                .nodes
                .iter()
                .map(|n| Node {
                    parent: n.parent,
                    children: n.children.clone(),
                    round: n.round,
                    depth: n.depth,
                    label: f(&n.label),
                })
                .collect(),
        }
    }
}

/// An ancestor-closed set of nodes of an [`OrderedTree`], with the child
/// order inherited from the base tree.
#[derive(Debug, Clone)]
pub struct Subtree<'a, L> {
    tree: &'a OrderedTree<L>,
    kept: Vec<bool>,
}

impl<'a, L> Subtree<'a, L> {
    pub fn base(&self) -> &'a OrderedTree<L> {
        self.tree
    }

    pub fn contains(&self, n: usize) -> bool {
        self.kept[n]
    }

    pub fn kept(&self) -> &[bool] {
        &self.kept
    }

    pub fn children(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        self.tree.children(n).iter().copied().filter(|&c| self.kept[c])
    }

    pub fn is_leaf(&self, n: usize) -> bool {
        self.children(n).next().is_none()
    }

    /// Kept nodes in preorder.
    pub fn nodes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.tree.root()];
        while let Some(n) = stack.pop() {
            out.push(n);
            let ch: Vec<usize> = self.children(n).collect();
            stack.extend(ch.into_iter().rev());
        }
        out
    }

    /// Kept leaves from left to right.
    pub fn leaves(&self) -> Vec<usize> {
        self.nodes().into_iter().filter(|&n| self.is_leaf(n)).collect()
    }

    pub fn height(&self) -> usize {
        self.nodes().into_iter().map(|n| self.tree.depth(n)).max().unwrap_or(0) + 1
    }

    pub fn leftmost_leaf(&self, n: usize) -> usize {
        let mut x = n;
        while let Some(c) = self.children(x).next() {
            x = c;
        }
        x
    }

    /// The kept child of `n` following `c` in the child order, wrapping
    /// around to the first kept child. `c` may be any base child of `n`.
    pub fn next_child(&self, n: usize, c: usize) -> Result<usize> {
        let base = self.tree.children(n);
        let pos = base.iter().position(|&x| x == c).ok_or(Error::NotAChild(n, c))?;
        base[pos + 1..]
            .iter()
            .chain(base[..=pos].iter())
            .copied()
            .find(|&x| self.kept[x])
            .ok_or(Error::NotAChild(n, c))
    }

    /// Move from `n_o` to the next branch below its ancestor `n_m`: the
    /// leftmost leaf under the child following the `n_o` branch, or `n_m`
    /// itself if it is a leaf of the subtree.
    pub fn jump(&self, n_o: usize, n_m: usize) -> Result<usize> {
        if !self.tree.is_ancestor(n_m, n_o) || !self.kept[n_m] {
            return Err(Error::NotAnAncestor(n_m, n_o));
        }
        if self.is_leaf(n_m) {
            return Ok(n_m);
        }
        if n_o == n_m {
            return Ok(self.leftmost_leaf(n_m));
        }
        let mut c = n_o;
        while self.tree.parent(c) != Some(n_m) {
            c = self.tree.parent(c).unwrap();
        }
        Ok(self.leftmost_leaf(self.next_child(n_m, c)?))
    }

    pub fn shape(&self) -> Shape {
        let mut round_branch = false;
        let mut square_branch = false;
        for n in self.nodes() {
            if self.children(n).count() > 1 {
                if self.tree.is_round(n) {
                    round_branch = true;
                } else {
                    square_branch = true;
                }
            }
        }
        let h = self.height();
        let root_round = self.tree.is_round(self.tree.root());
        Shape {
            rabin: !round_branch,
            streett: !square_branch,
            parity: !round_branch && !square_branch,
            gen_buchi: h == 1 || (h == 2 && root_round),
            gen_cobuchi: h == 1 || (h == 2 && !root_round),
        }
    }

    /// Round-branching width: 1 at leaves, maximum over the children of a
    /// square node, sum over the children of a round node.
    pub fn round_branching_width(&self) -> usize {
        self.mw(self.tree.root())
    }

    fn mw(&self, n: usize) -> usize {
        let ch: Vec<usize> = self.children(n).collect();
        if ch.is_empty() {
            1
        } else if self.tree.is_round(n) {
            ch.iter().map(|&c| self.mw(c)).sum()
        } else {
            ch.iter().map(|&c| self.mw(c)).max().unwrap()
        }
    }

    /// Labelling of the kept leaves by `0..mw` such that leaves below
    /// distinct children of a round node get distinct values.
    ///
    /// Returns one entry per base node; only kept leaves are `Some`.
    pub fn eta_labelling(&self) -> Vec<Option<usize>> {
        let mut eta = vec![None; self.tree.len()];
        self.assign_eta(self.tree.root(), 0, &mut eta);
        eta
    }

    fn assign_eta(&self, n: usize, offset: usize, eta: &mut [Option<usize>]) {
        let ch: Vec<usize> = self.children(n).collect();
        if ch.is_empty() {
            eta[n] = Some(offset);
        } else if self.tree.is_round(n) {
            let mut off = offset;
            for c in ch {
                self.assign_eta(c, off, eta);
                off += self.mw(c);
            }
        } else {
            for c in ch {
                self.assign_eta(c, offset, eta);
            }
        }
    }
}
