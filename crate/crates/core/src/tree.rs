//! Flattening of strict binary trees into hierarchy 2-tuples.
//!
//! Depth maps to the hierarchy level (root on `l(1,3)`) and horizontal position
//! to the label index: the root is `s_1^3` and a node `s_i^n` has children
//! `s_{2i-1}^{2n-1}` and `s_{2i+1}^{2n-1}`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::{Level, TwoTuple};
use crate::scalar::Scalar;

/// Tree node as read from JSON: `{"name": .., "left": node|null, "right": node|null}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinaryNode {
    pub name: String,
    #[serde(default)]
    pub left: Option<Box<BinaryNode>>,
    #[serde(default)]
    pub right: Option<Box<BinaryNode>>,
}

impl BinaryNode {
    pub fn leaf(name: impl Into<String>) -> Self {
        BinaryNode {
            name: name.into(),
            left: None,
            right: None,
        }
    }

    pub fn branch(name: impl Into<String>, left: BinaryNode, right: BinaryNode) -> Self {
        BinaryNode {
            name: name.into(),
            left: Some(Box::new(left)),
            right: Some(Box::new(right)),
        }
    }

    /// Node names in in-order traversal.
    pub fn in_order(&self) -> Vec<&str> {
        let mut out = Vec::new();
        fn walk<'a>(n: &'a BinaryNode, out: &mut Vec<&'a str>) {
            if let Some(l) = &n.left {
                walk(l, out);
            }
            out.push(&n.name);
            if let Some(r) = &n.right {
                walk(r, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeTuple<T> {
    pub name: String,
    pub two_tuple: TwoTuple<T>,
}

impl<T: Scalar> NodeTuple<T> {
    /// Position on the normalized `[0, 1]` axis.
    pub fn position(&self) -> T {
        self.two_tuple.position(T::one())
    }

    pub fn depth(&self) -> u32 {
        self.two_tuple.level.number() - 1
    }
}

pub fn flatten<T: Scalar>(root: &BinaryNode) -> Result<Vec<NodeTuple<T>>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = vec![(root, Level::new(1)?, 1u64)];
    while let Some((node, level, index)) = stack.pop() {
        if !seen.insert(node.name.as_str()) {
            return Err(Error::DuplicateNode(node.name.clone()));
        }
        out.push(NodeTuple {
            name: node.name.clone(),
            two_tuple: TwoTuple::new(level, index, T::zero())?,
        });
        match (&node.left, &node.right) {
            (Some(l), Some(r)) => {
                let child = level.finer()?;
                stack.push((r, child, 2 * index + 1));
                stack.push((l, child, 2 * index - 1));
            }
            (None, None) => {}
            _ => return Err(Error::NotStrictBinary(node.name.clone())),
        }
    }
    out.sort_by_key(|n| (n.two_tuple.level, n.two_tuple.index));
    Ok(out)
}

/// Distance between two flattened nodes on the normalized axis.
pub fn node_distance<T: Scalar>(a: &NodeTuple<T>, b: &NodeTuple<T>) -> T {
    (a.position() - b.position()).abs()
}
