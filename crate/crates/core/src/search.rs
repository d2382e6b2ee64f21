//! Cardinality-constraint search shared by the oracle and the hardness
//! embedding: binary cell variables, each in one row, one column and one block
//! constraint with an admissible interval of ones.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{BinaryImage, Instance};
use crate::Point;

struct Constraint {
    vars: Vec<usize>,
    lo: u32,
    hi: u32,
}

const FREE: i8 = -1;

pub(crate) struct Engine {
    width: usize,
    height: usize,
    /// Variable → cell, in row-major bottom-up order.
    cells: Vec<Point>,
    /// Cell → variable, `usize::MAX` for cells eliminated up front.
    var_of: Vec<usize>,
    constraints: Vec<Constraint>,
    var_constraints: Vec<[usize; 3]>,
    value: Vec<i8>,
    ones: Vec<u32>,
    free: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    queued: Vec<bool>,
    /// Set when a fixed cell contradicts the constraints before search starts.
    contradiction: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Outcome {
    pub solutions: u64,
    pub nodes: u64,
    pub exhausted: bool,
}

struct Frame {
    var: usize,
    mark: usize,
    next: i8,
}

impl Engine {
    /// Builds the constraint system of `inst`. Cells lying in a zero row, a
    /// zero column or a block whose window is `[0, 0]` are not variables.
    pub fn new(inst: &Instance) -> Self {
        let (w, h, k) = (inst.width, inst.height, inst.k);
        let candidate = |p: usize, q: usize| {
            inst.row_sums[q - 1] > 0
                && inst.col_sums[p - 1] > 0
                && inst.window(inst.corner_containing((p, q))).1 > 0
        };
        let mut cells = Vec::new();
        let mut var_of = vec![usize::MAX; w * h];
        for q in 1..=h {
            for p in 1..=w {
                if candidate(p, q) {
                    var_of[(q - 1) * w + (p - 1)] = cells.len();
                    cells.push((p, q));
                }
            }
        }
        let rows = h;
        let cols = w;
        let mut constraints: Vec<Constraint> = Vec::with_capacity(rows + cols + inst.block_count());
        for &r in &inst.row_sums {
            constraints.push(Constraint {
                vars: Vec::new(),
                lo: r,
                hi: r,
            });
        }
        for &c in &inst.col_sums {
            constraints.push(Constraint {
                vars: Vec::new(),
                lo: c,
                hi: c,
            });
        }
        for corner in inst.corners() {
            let (lo, hi) = inst.window(corner);
            constraints.push(Constraint {
                vars: Vec::new(),
                lo,
                hi,
            });
        }
        let bx = w / k;
        let mut var_constraints = Vec::with_capacity(cells.len());
        for (v, &(p, q)) in cells.iter().enumerate() {
            let block = rows + cols + ((q - 1) / k) * bx + (p - 1) / k;
            let cs = [q - 1, rows + p - 1, block];
            for &c in &cs {
                constraints[c].vars.push(v);
            }
            var_constraints.push(cs);
        }
        let n = cells.len();
        let free = constraints.iter().map(|c| c.vars.len() as u32).collect();
        let m = constraints.len();
        Engine {
            width: w,
            height: h,
            cells,
            var_of,
            constraints,
            var_constraints,
            value: vec![FREE; n],
            ones: vec![0; m],
            free,
            trail: Vec::new(),
            queue: (0..m).collect(),
            queued: vec![true; m],
            contradiction: false,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.cells.len()
    }

    /// Pins cell `(p, q)` before the search.
    pub fn fix(&mut self, (p, q): Point, value: bool) {
        let v = self.var_of[(q - 1) * self.width + (p - 1)];
        if v == usize::MAX {
            self.contradiction |= value;
            return;
        }
        match self.value[v] {
            FREE => self.assign(v, i8::from(value)),
            old => self.contradiction |= old != i8::from(value),
        }
    }

    fn assign(&mut self, v: usize, val: i8) {
        self.value[v] = val;
        self.trail.push(v);
        for &c in &self.var_constraints[v] {
            self.free[c] -= 1;
            self.ones[c] += val as u32;
            if !self.queued[c] {
                self.queued[c] = true;
                self.queue.push(c);
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().unwrap();
            let val = self.value[v] as u32;
            self.value[v] = FREE;
            for &c in &self.var_constraints[v] {
                self.free[c] += 1;
                self.ones[c] -= val;
            }
        }
    }

    fn clear_queue(&mut self) {
        for c in self.queue.drain(..) {
            self.queued[c] = false;
        }
    }

    /// Saturation propagation; `false` on a violated constraint.
    fn propagate(&mut self) -> bool {
        while let Some(c) = self.queue.pop() {
            self.queued[c] = false;
            let (ones, free) = (self.ones[c], self.free[c]);
            let (lo, hi) = (self.constraints[c].lo, self.constraints[c].hi);
            if ones > hi || ones + free < lo {
                self.clear_queue();
                return false;
            }
            if free == 0 {
                continue;
            }
            let forced = if ones == hi {
                0
            } else if ones + free == lo {
                1
            } else {
                continue;
            };
            for idx in 0..self.constraints[c].vars.len() {
                let v = self.constraints[c].vars[idx];
                if self.value[v] == FREE {
                    self.assign(v, forced);
                }
            }
        }
        true
    }

    /// The current full assignment as an image.
    pub fn image(&self) -> BinaryImage {
        let mut img = BinaryImage::new(self.width, self.height);
        for (v, &(p, q)) in self.cells.iter().enumerate() {
            if self.value[v] == 1 {
                img.set(p, q, true);
            }
        }
        img
    }

    /// Depth-first enumeration in variable order, calling `on_solution` for
    /// every complete assignment. Stops after `max_solutions` solutions or
    /// `max_nodes` branchings.
    pub fn run(
        &mut self,
        max_solutions: u64,
        max_nodes: u64,
        mut on_solution: impl FnMut(&Engine),
    ) -> Outcome {
        let mut out = Outcome {
            solutions: 0,
            nodes: 0,
            exhausted: true,
        };
        if self.contradiction || !self.propagate() {
            return out;
        }
        let mut stack: Vec<Frame> = Vec::new();
        'descend: loop {
            let start = stack.last().map_or(0, |f| f.var + 1);
            match (start..self.value.len()).find(|&v| self.value[v] == FREE) {
                None => {
                    out.solutions += 1;
                    on_solution(self);
                    if out.solutions >= max_solutions {
                        out.exhausted = false;
                        return out;
                    }
                }
                Some(var) => {
                    out.nodes += 1;
                    if out.nodes > max_nodes {
                        out.exhausted = false;
                        return out;
                    }
                    stack.push(Frame {
                        var,
                        mark: self.trail.len(),
                        next: 0,
                    });
                }
            }
            loop {
                let Some(top) = stack.last_mut() else {
                    return out;
                };
                let (var, mark, val) = (top.var, top.mark, top.next);
                top.next += 1;
                self.undo_to(mark);
                if val > 1 {
                    stack.pop();
                    continue;
                }
                self.assign(var, val);
                if self.propagate() {
                    continue 'descend;
                }
            }
        }
    }
}
