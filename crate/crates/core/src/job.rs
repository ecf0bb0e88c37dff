//! Job descriptions shared by the command line and the test suites.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::build::build_nonsplit_sequence;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::grp::{family_a_full, family_zp_x_zp, GroupSpecJson, MatrixGroup, DEFAULT_ORDER_CAP};
use crate::rep::GModule;

/// Where the group comes from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum GroupRecipe {
    /// `{A(a) ⊕ I : a ∈ GF(q)}`
    FamilyA,
    /// the 4×4 group `Z_p × Z_p` over the prime field
    ZpxZp,
    /// explicit generators in a group file
    File(PathBuf),
}

impl fmt::Display for GroupRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupRecipe::FamilyA => write!(f, "family-a"),
            GroupRecipe::ZpxZp => write!(f, "zpxzp"),
            GroupRecipe::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl FromStr for GroupRecipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "family-a" => Ok(GroupRecipe::FamilyA),
            "zpxzp" => Ok(GroupRecipe::ZpxZp),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(GroupRecipe::File(PathBuf::from(path))),
                _ => Err(Error::Usage(format!("unknown group recipe '{s}' (expected family-a, zpxzp or file:<path>)"))),
            },
        }
    }
}

impl TryFrom<String> for GroupRecipe {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<GroupRecipe> for String {
    fn from(r: GroupRecipe) -> String {
        r.to_string()
    }
}

fn default_k() -> u32 {
    1
}

fn default_n() -> usize {
    2
}

fn default_cap() -> usize {
    DEFAULT_ORDER_CAP
}

fn default_group() -> GroupRecipe {
    GroupRecipe::FamilyA
}

/// Everything needed to reproduce a run. The job file is this struct as JSON;
/// omitted fields take the same defaults as the flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub p: u32,
    #[serde(default = "default_k")]
    pub k: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_group")]
    pub group: GroupRecipe,
    #[serde(default = "default_cap")]
    pub order_cap: usize,
    #[serde(default)]
    pub seed: u64,
}

impl JobSpec {
    pub fn new(p: u32, k: u32, n: usize) -> JobSpec {
        JobSpec { p, k, modulus: None, n, group: GroupRecipe::FamilyA, order_cap: DEFAULT_ORDER_CAP, seed: 0 }
    }

    pub fn with_group(mut self, group: GroupRecipe) -> Self {
        self.group = group;
        self
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.k, self.modulus.as_deref())
    }

    /// Enumerates the group. For `zpxzp` the matrix size is 4 regardless of
    /// `n`; a group file must use the job's field.
    pub fn build_group(&self) -> Result<Arc<MatrixGroup>> {
        let field = self.field()?;
        let group = match &self.group {
            GroupRecipe::FamilyA => family_a_full(&field, self.n, self.order_cap)?,
            GroupRecipe::ZpxZp => family_zp_x_zp(&field, self.order_cap)?,
            GroupRecipe::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let spec: GroupSpecJson = serde_json::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
                if Field::from_spec(&spec.field)? != field {
                    return Err(Error::Usage(format!("{} is over a different field than --p/--k/--modulus", path.display())));
                }
                MatrixGroup::from_spec_json(&spec, self.order_cap)?
            }
        };
        Ok(Arc::new(group))
    }
}

/// Builds a module from a recipe such as `sym:2`, `dual(U)`,
/// `tensor(natural,frob)`, `hom(sym:3,frob)` or `sum(det,trivial:2)`.
/// The atoms `U` and `Utilde` refer to the non-split construction.
pub fn module_from_recipe(group: &Arc<MatrixGroup>, recipe: &str) -> Result<GModule> {
    let mut parser = RecipeParser { group, src: recipe.as_bytes(), pos: 0, construction: None };
    let m = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(m.with_recipe(recipe.to_string()))
}

struct RecipeParser<'a> {
    group: &'a Arc<MatrixGroup>,
    src: &'a [u8],
    pos: usize,
    construction: Option<(GModule, GModule)>,
}

impl RecipeParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Usage(format!("module recipe: {what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32> {
        if !self.eat(b':') {
            return Err(self.err("expected ':<number>'"));
        }
        self.ident().parse().map_err(|_| self.err("expected a number"))
    }

    fn args(&mut self) -> Result<Vec<GModule>> {
        if !self.eat(b'(') {
            return Err(self.err("expected '('"));
        }
        let mut out = vec![self.expr()?];
        while self.eat(b',') {
            out.push(self.expr()?);
        }
        if !self.eat(b')') {
            return Err(self.err("expected ')'"));
        }
        Ok(out)
    }

    fn construction(&mut self) -> Result<(GModule, GModule)> {
        if self.construction.is_none() {
            let c = build_nonsplit_sequence(self.group)?;
            self.construction = Some((c.u, c.u_tilde));
        }
        Ok(self.construction.clone().expect("just built"))
    }

    fn expr(&mut self) -> Result<GModule> {
        let name = self.ident();
        let g = self.group;
        match name.as_str() {
            "trivial" => Ok(GModule::trivial(g, self.number()? as usize)),
            "natural" => Ok(GModule::natural(g)),
            "det" => Ok(GModule::determinant(g)),
            "frob" => Ok(GModule::frobenius_twist(g)),
            "sym" => Ok(GModule::sym_power(g, self.number()?)?.0),
            "U" => Ok(self.construction()?.0),
            "Utilde" => Ok(self.construction()?.1),
            "dual" | "tensor" | "hom" | "sum" => {
                let args = self.args()?;
                match (name.as_str(), args.as_slice()) {
                    ("dual", [m]) => Ok(m.dual()),
                    ("tensor", [a, b]) => a.tensor(b),
                    ("hom", [a, b]) => GModule::hom(a, b),
                    ("sum", parts) => GModule::direct_sum(&parts.iter().collect::<Vec<_>>()),
                    _ => Err(self.err(&format!("wrong number of arguments for {name}"))),
                }
            }
            "" => Err(self.err("expected a module")),
            other => Err(self.err(&format!("unknown module '{other}'"))),
        }
    }
}
