//! The runtime value universe: flat row-major arrays of atoms, and the
//! frame/cell algebra the application rule is built from.

use std::fmt;
use std::sync::Arc;

use crate::builtins::Builtin;
use crate::error::{bail, Result};
use crate::eval::Env;
use crate::syntax::Expr;

pub type Shape = Vec<usize>;

pub fn element_count(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// How much of an argument a parameter consumes as one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellRank {
    Nat(usize),
    All,
}

impl fmt::Display for CellRank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellRank::Nat(n) => write!(f, "{n}"),
            CellRank::All => f.write_str("all"),
        }
    }
}

/// The index a box supplies for one of its abstracted index variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Witness {
    Dim(usize),
    Shape(Vec<usize>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Dim(d) => write!(f, "{d}"),
            Witness::Shape(dims) => {
                let parts: Vec<_> = dims.iter().map(|d| d.to_string()).collect();
                write!(f, "[{}]", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoxValue {
    pub contents: ArrayValue,
    pub witnesses: Vec<Witness>,
}

pub struct Closure {
    pub name: Option<String>,
    pub params: Vec<String>,
    pub ranks: Vec<CellRank>,
    pub body: Arc<Expr>,
    pub env: Env,
}

pub enum Function {
    Builtin(&'static Builtin),
    Closure(Closure),
}

impl Function {
    pub fn ranks(&self) -> &[CellRank] {
        match self {
            Function::Builtin(b) => b.ranks,
            Function::Closure(c) => &c.ranks,
        }
    }

    pub fn arity(&self) -> usize {
        self.ranks().len()
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Function::Builtin(b) => Some(b.name),
            Function::Closure(c) => c.name.as_deref(),
        }
    }
}

impl fmt::Debug for Function {
    // Closure environments can be cyclic, so only the header is shown.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Function({}, {:?})", self.name().unwrap_or("anon"), self.ranks())
    }
}

#[derive(Debug, Clone)]
pub enum Atom {
    Int(i64),
    Float(f64),
    Bool(bool),
    Char(char),
    Func(Arc<Function>),
    Box(Arc<BoxValue>),
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        use Atom::*;
        match (self, other) {
            (Int(a), Int(b)) => a == b,
            (Float(a), Float(b)) => a == b,
            (Bool(a), Bool(b)) => a == b,
            (Char(a), Char(b)) => a == b,
            (Func(a), Func(b)) => match (&**a, &**b) {
                (Function::Builtin(x), Function::Builtin(y)) => x.name == y.name,
                _ => Arc::ptr_eq(a, b),
            },
            (Box(a), Box(b)) => a == b,
            _ => false,
        }
    }
}

impl Atom {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Atom::Int(_) => "int",
            Atom::Float(_) => "float",
            Atom::Bool(_) => "bool",
            Atom::Char(_) => "char",
            Atom::Func(_) => "function",
            Atom::Box(_) => "box",
        }
    }

    pub fn new_box(contents: ArrayValue, witnesses: Vec<Witness>) -> Atom {
        Atom::Box(Arc::new(BoxValue { contents, witnesses }))
    }
}

/// A shape plus its atoms in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayValue {
    shape: Shape,
    atoms: Vec<Atom>,
}

impl ArrayValue {
    /// Panics if the atom count does not match the shape; callers build
    /// atoms and shape together.
    pub fn new(shape: Shape, atoms: Vec<Atom>) -> Self {
        assert_eq!(element_count(&shape), atoms.len(), "shape {shape:?} does not hold {} atoms", atoms.len());
        ArrayValue { shape, atoms }
    }

    pub fn scalar(atom: Atom) -> Self {
        ArrayValue { shape: vec![], atoms: vec![atom] }
    }

    pub fn vector(atoms: Vec<Atom>) -> Self {
        ArrayValue { shape: vec![atoms.len()], atoms }
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(Atom::Int(n))
    }

    pub fn bool(b: bool) -> Self {
        Self::scalar(Atom::Bool(b))
    }

    pub fn ints(shape: Shape, values: impl IntoIterator<Item = i64>) -> Self {
        Self::new(shape, values.into_iter().map(Atom::Int).collect())
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.atoms
    }

    pub fn into_parts(self) -> (Shape, Vec<Atom>) {
        (self.shape, self.atoms)
    }

    pub fn rank(&self) -> usize {
        self.shape.len()
    }

    pub fn is_scalar(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn scalar_atom(&self) -> Option<&Atom> {
        if self.is_scalar() {
            self.atoms.first()
        } else {
            None
        }
    }

    pub fn reshape(self, shape: Shape) -> Self {
        Self::new(shape, self.atoms)
    }

    /// Copy out the cell of shape `cell_shape` at position `index` of the
    /// frame, counting in row-major order.
    pub fn cell(&self, index: usize, cell_shape: &[usize]) -> ArrayValue {
        let size = element_count(cell_shape);
        ArrayValue { shape: cell_shape.to_vec(), atoms: self.atoms[index * size..(index + 1) * size].to_vec() }
    }

    /// Extent of the leading axis; `None` for scalars.
    pub fn item_count(&self) -> Option<usize> {
        self.shape.first().copied()
    }

    pub fn item_shape(&self) -> &[usize] {
        self.shape.get(1..).unwrap_or(&[])
    }

    pub fn item(&self, i: usize) -> ArrayValue {
        let item_shape = self.item_shape().to_vec();
        self.cell(i, &item_shape)
    }

    pub fn items(&self) -> Vec<ArrayValue> {
        (0..self.item_count().unwrap_or(0)).map(|i| self.item(i)).collect()
    }

    /// Stack equally shaped items along a new leading axis.
    pub fn from_items(items: Vec<ArrayValue>, item_shape: &[usize]) -> Result<ArrayValue> {
        collect_frame(&[items.len()], items, Some(item_shape))
    }
}

/// Frame left after removing a `rank`-dimensional cell suffix.
pub fn cell_frame(a: &ArrayValue, rank: CellRank) -> Result<&[usize]> {
    match rank {
        CellRank::All => Ok(&[]),
        CellRank::Nat(r) if r <= a.rank() => Ok(&a.shape[..a.rank() - r]),
        CellRank::Nat(r) => bail!(RankTooLow, "argument of rank {} cannot supply a rank-{r} cell", a.rank()),
    }
}

/// View `a` as a frame of cells of the given rank.
pub fn split_cells(a: &ArrayValue, rank: CellRank) -> Result<(Shape, Vec<ArrayValue>)> {
    let frame = cell_frame(a, rank)?.to_vec();
    let cell_shape = a.shape[frame.len()..].to_vec();
    let cells = (0..element_count(&frame)).map(|i| a.cell(i, &cell_shape)).collect();
    Ok((frame, cells))
}

/// Assemble result cells into a frame. `expected` supplies the cell shape
/// when the frame holds no cells, and is checked against the cells
/// otherwise.
pub fn collect_frame(frame: &[usize], cells: Vec<ArrayValue>, expected: Option<&[usize]>) -> Result<ArrayValue> {
    if cells.len() != element_count(frame) {
        bail!(CellShapeMismatch, "frame {frame:?} needs {} cells, got {}", element_count(frame), cells.len());
    }
    let cell_shape: Shape = match (cells.first(), expected) {
        (Some(c), _) => c.shape.clone(),
        (None, Some(s)) => s.to_vec(),
        (None, None) => bail!(EmptyFrameUnknownCell, "cannot determine the cell shape of an empty frame {frame:?}"),
    };
    let mut atoms = Vec::with_capacity(cells.len() * element_count(&cell_shape));
    for cell in cells {
        if cell.shape != cell_shape {
            bail!(CellShapeMismatch, "result cells have different shapes {:?} and {:?}", cell_shape, cell.shape);
        }
        atoms.extend(cell.atoms);
    }
    let mut shape = frame.to_vec();
    shape.extend_from_slice(&cell_shape);
    Ok(ArrayValue { shape, atoms })
}

/// Position in a frame that is a prefix of `principal` which serves
/// principal position `p`: the trailing part of the index is dropped.
pub fn replicated_index(p: usize, own_frame_len: usize, principal: &[usize]) -> usize {
    p / element_count(&principal[own_frame_len..])
}

/// The cells of `a` laid out across `principal`, reusing each cell for
/// every position whose index extends the cell's own frame index.
pub fn replicate_to_frame(
    a: &ArrayValue,
    own_frame: &[usize],
    principal: &[usize],
    rank: CellRank,
) -> Result<Vec<ArrayValue>> {
    let (_, cells) = split_cells(a, rank)?;
    Ok((0..element_count(principal)).map(|p| cells[replicated_index(p, own_frame.len(), principal)].clone()).collect())
}

/// True when `short` is a prefix of `long`.
pub fn is_prefix(short: &[usize], long: &[usize]) -> bool {
    short.len() <= long.len() && long[..short.len()] == *short
}
