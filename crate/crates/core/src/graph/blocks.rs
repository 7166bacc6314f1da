use super::{Graph, VertexSet};
use crate::error::Result;

/// Blocks (maximal 2-connected subgraphs or bridges) and cut vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the blocks, ordered by their sorted member lists.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
}

struct Tarjan<'g> {
    g: &'g Graph,
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    edge_stack: Vec<(usize, usize)>,
    blocks: Vec<VertexSet>,
    cut: VertexSet,
}

impl Tarjan<'_> {
    fn dfs(&mut self, u: usize, parent: Option<usize>) {
        self.time += 1;
        self.disc[u] = self.time;
        self.low[u] = self.time;
        let mut children = 0;
        for &v in self.g.neighbors(u) {
            if self.disc[v] == 0 {
                children += 1;
                self.edge_stack.push((u, v));
                self.dfs(v, Some(u));
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    if parent.is_some() || children > 1 {
                        self.cut.insert(u);
                    }
                    let mut block = VertexSet::new(self.g.order());
                    while let Some((a, b)) = self.edge_stack.pop() {
                        block.insert(a);
                        block.insert(b);
                        if (a, b) == (u, v) {
                            break;
                        }
                    }
                    self.blocks.push(block);
                }
            } else if Some(v) != parent && self.disc[v] < self.disc[u] {
                self.edge_stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Block/cut-vertex decomposition of a connected graph.
pub fn blocks(g: &Graph) -> Result<BlockDecomposition> {
    g.require_connected()?;
    let n = g.order();
    let mut t = Tarjan {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        cut: VertexSet::new(n),
    };
    t.dfs(0, None);
    if n == 1 {
        t.blocks.push(VertexSet::from_vertices(1, [0]));
    }
    let mut blocks = t.blocks;
    blocks.sort_by_key(VertexSet::to_vec);
    Ok(BlockDecomposition { blocks, cut_vertices: t.cut })
}
