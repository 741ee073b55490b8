use std::fmt;

/// Parsed FCL document restricted to `VAR_INPUT` and `FUZZIFY` blocks.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FclModel {
    pub inputs: Vec<VarDecl>,
    pub fuzzify_blocks: Vec<FuzzifyBlock>,
}

impl FclModel {
    pub fn input(&self, name: &str) -> Option<&VarDecl> {
        self.inputs.iter().find(|v| v.name == name)
    }

    pub fn fuzzify_block(&self, variable: &str) -> Option<&FuzzifyBlock> {
        self.fuzzify_blocks.iter().find(|b| b.variable == variable)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VarDecl {
    pub name: String,
    pub ty: VarType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarType {
    Ling,
}

impl fmt::Display for VarType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarType::Ling => f.write_str("LING"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifyBlock {
    pub variable: String,
    pub terms: Vec<TermDecl>,
}

/// `TERM name := ling body;`
#[derive(Debug, Clone, PartialEq)]
pub struct TermDecl {
    pub name: String,
    pub body: LingBody,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LingBody {
    Pairs(LingDeclPairs),
    Density(LingDeclDensity),
}

/// `(Name, value) (Name, value) ...`
#[derive(Debug, Clone, PartialEq)]
pub struct LingDeclPairs {
    pub pairs: Vec<(String, f64)>,
}

/// `left.. | center | right.., density density`
#[derive(Debug, Clone, PartialEq)]
pub struct LingDeclDensity {
    pub left_terms: Vec<String>,
    pub center_term: String,
    pub right_terms: Vec<String>,
    pub left_density: Density,
    pub right_density: Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Density {
    Middle,
    Extreme,
}

impl Density {
    pub fn keyword(self) -> &'static str {
        match self {
            Density::Middle => "middle",
            Density::Extreme => "extreme",
        }
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}
