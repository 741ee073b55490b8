//! Recursive descent parser for the supported FCL subset.
//!
//! ```text
//! model     := { var_input | fuzzify }
//! var_input := "VAR_INPUT" { ident ":" "LING" ";" } "END_VAR"
//! fuzzify   := "FUZZIFY" ident { "TERM" ident ":=" "ling" body ";" } "END_FUZZIFY"
//! body      := pair { pair }
//!            | { ident } "|" { ident } "|" { ident } "," density density
//! pair      := "(" ident "," number ")"
//! density   := "middle" | "extreme"
//! ```

use std::collections::HashMap;

use super::ast::*;
use super::lexer::{Keyword, Lexer, Pos, Tok, Token};
use super::FclError;

struct BlockInfo {
    variable_pos: Pos,
    keyword_pos: Pos,
    term_positions: Vec<Pos>,
}

pub struct Parser<'a> {
    lexer: Lexer<'a>,
    current: Token,
    var_positions: Vec<Pos>,
    blocks: Vec<BlockInfo>,
}

impl<'a> Parser<'a> {
    pub fn new(text: &'a str) -> Result<Self, FclError> {
        let mut lexer = Lexer::new(text);
        let current = lexer.next_token()?;
        Ok(Parser {
            lexer,
            current,
            var_positions: Vec::new(),
            blocks: Vec::new(),
        })
    }

    fn advance(&mut self) -> Result<Token, FclError> {
        let next = self.lexer.next_token()?;
        Ok(std::mem::replace(&mut self.current, next))
    }

    fn unexpected(&self, expected: &str) -> FclError {
        FclError::syntax(
            self.current.pos,
            format!("expected {expected}, found {}", self.current.tok.describe()),
        )
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<Pos, FclError> {
        if self.current.tok == tok {
            Ok(self.advance()?.pos)
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_keyword(&mut self, kw: Keyword) -> Result<Pos, FclError> {
        self.expect(Tok::Keyword(kw), &format!("`{}`", kw.text()))
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Pos), FclError> {
        match &self.current.tok {
            Tok::Ident(name) => {
                let name = name.clone();
                let pos = self.advance()?.pos;
                Ok((name, pos))
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn at_ident(&self) -> bool {
        matches!(self.current.tok, Tok::Ident(_))
    }

    pub fn parse_model(mut self) -> Result<FclModel, FclError> {
        let mut model = FclModel::default();
        loop {
            match &self.current.tok {
                Tok::Eof => break,
                Tok::Keyword(Keyword::VarInput) => self.parse_var_input(&mut model)?,
                Tok::Keyword(Keyword::Fuzzify) => {
                    let block = self.parse_fuzzify()?;
                    model.fuzzify_blocks.push(block);
                }
                Tok::Ident(word) => {
                    return Err(FclError::syntax(
                        self.current.pos,
                        format!("unknown keyword `{word}`, expected `VAR_INPUT` or `FUZZIFY`"),
                    ))
                }
                _ => return Err(self.unexpected("`VAR_INPUT` or `FUZZIFY`")),
            }
        }
        self.check(&model)?;
        Ok(model)
    }

    fn parse_var_input(&mut self, model: &mut FclModel) -> Result<(), FclError> {
        self.expect_keyword(Keyword::VarInput)?;
        while self.current.tok != Tok::Keyword(Keyword::EndVar) {
            let (name, pos) = self.expect_ident("a variable name or `END_VAR`")?;
            self.expect(Tok::Colon, "`:`")?;
            let ty = match &self.current.tok {
                Tok::Keyword(Keyword::Ling) => VarType::Ling,
                Tok::Ident(other) => {
                    return Err(FclError::syntax(
                        self.current.pos,
                        format!("unsupported variable type `{other}`, expected `LING`"),
                    ))
                }
                _ => return Err(self.unexpected("`LING`")),
            };
            self.advance()?;
            self.expect(Tok::Semicolon, "`;`")?;
            model.inputs.push(VarDecl { name, ty });
            self.var_positions.push(pos);
        }
        self.advance()?;
        Ok(())
    }

    fn parse_fuzzify(&mut self) -> Result<FuzzifyBlock, FclError> {
        let keyword_pos = self.expect_keyword(Keyword::Fuzzify)?;
        let (variable, variable_pos) = self.expect_ident("a variable name")?;
        let mut terms = Vec::new();
        let mut term_positions = Vec::new();
        loop {
            match self.current.tok {
                Tok::Keyword(Keyword::EndFuzzify) => {
                    self.advance()?;
                    break;
                }
                Tok::Keyword(Keyword::Term) => {
                    term_positions.push(self.current.pos);
                    terms.push(self.parse_term()?);
                }
                _ => return Err(self.unexpected("`TERM` or `END_FUZZIFY`")),
            }
        }
        self.blocks.push(BlockInfo {
            variable_pos,
            keyword_pos,
            term_positions,
        });
        Ok(FuzzifyBlock { variable, terms })
    }

    fn parse_term(&mut self) -> Result<TermDecl, FclError> {
        self.expect_keyword(Keyword::Term)?;
        let (name, _) = self.expect_ident("a term name")?;
        self.expect(Tok::Assign, "`:=`")?;
        match &self.current.tok {
            Tok::Ident(w) if w == "ling" => {
                self.advance()?;
            }
            _ => return Err(self.unexpected("`ling`")),
        }
        let body = if self.current.tok == Tok::LParen {
            LingBody::Pairs(self.parse_pairs()?)
        } else {
            LingBody::Density(self.parse_density()?)
        };
        self.expect(Tok::Semicolon, "`;`")?;
        Ok(TermDecl { name, body })
    }

    fn parse_pairs(&mut self) -> Result<LingDeclPairs, FclError> {
        let mut pairs = Vec::new();
        while self.current.tok == Tok::LParen {
            self.advance()?;
            let (name, _) = self.expect_ident("a term name")?;
            self.expect(Tok::Comma, "`,`")?;
            let value = match self.current.tok {
                Tok::Number(v) => v,
                _ => return Err(self.unexpected("a number")),
            };
            self.advance()?;
            self.expect(Tok::RParen, "`)`")?;
            pairs.push((name, value));
        }
        Ok(LingDeclPairs { pairs })
    }

    fn idents(&mut self) -> Result<Vec<(String, Pos)>, FclError> {
        let mut out = Vec::new();
        while self.at_ident() {
            out.push(self.expect_ident("a term name")?);
        }
        Ok(out)
    }

    fn parse_density(&mut self) -> Result<LingDeclDensity, FclError> {
        let start = self.current.pos;
        let left = self.idents()?;
        let first_bar = self.expect(Tok::Bar, "`(` or a term list followed by `|`")?;
        let center = self.idents()?;
        let second_bar = self.expect(Tok::Bar, "a second `|`")?;
        let right = self.idents()?;
        if self.current.tok == Tok::Bar {
            return Err(FclError::syntax(self.current.pos, "unexpected third `|`"));
        }
        self.expect(Tok::Comma, "`,` before the densities")?;
        let left_density = self.density()?;
        let right_density = self.density()?;

        if left.is_empty() {
            return Err(FclError::semantic(
                start,
                "no term on the left of the center term",
            ));
        }
        if center.len() != 1 {
            let pos = center.get(1).map_or(second_bar, |c| c.1);
            return Err(FclError::semantic(
                if center.is_empty() { first_bar } else { pos },
                format!(
                    "exactly one center term is required, found {}",
                    center.len()
                ),
            ));
        }
        if right.is_empty() {
            return Err(FclError::semantic(
                second_bar,
                "no term on the right of the center term",
            ));
        }
        let names = |v: Vec<(String, Pos)>| v.into_iter().map(|(n, _)| n).collect::<Vec<_>>();
        Ok(LingDeclDensity {
            left_terms: names(left),
            center_term: center.into_iter().next().expect("checked").0,
            right_terms: names(right),
            left_density,
            right_density,
        })
    }

    fn density(&mut self) -> Result<Density, FclError> {
        let d = match &self.current.tok {
            Tok::Ident(w) if w == "middle" => Density::Middle,
            Tok::Ident(w) if w == "extreme" => Density::Extreme,
            _ => return Err(self.unexpected("`middle` or `extreme`")),
        };
        self.advance()?;
        Ok(d)
    }

    fn check(&self, model: &FclModel) -> Result<(), FclError> {
        let mut declared: HashMap<&str, Pos> = HashMap::new();
        for (v, pos) in model.inputs.iter().zip(&self.var_positions) {
            if declared.insert(v.name.as_str(), *pos).is_some() {
                return Err(FclError::semantic(
                    *pos,
                    format!("variable `{}` declared twice", v.name),
                ));
            }
        }
        let mut fuzzified: HashMap<&str, Pos> = HashMap::new();
        for (block, info) in model.fuzzify_blocks.iter().zip(&self.blocks) {
            if !declared.contains_key(block.variable.as_str()) {
                return Err(FclError::semantic(
                    info.variable_pos,
                    format!("FUZZIFY refers to undeclared variable `{}`", block.variable),
                ));
            }
            if fuzzified
                .insert(block.variable.as_str(), info.variable_pos)
                .is_some()
            {
                return Err(FclError::semantic(
                    info.variable_pos,
                    format!("variable `{}` is fuzzified twice", block.variable),
                ));
            }
            match block.terms.len() {
                0 => {
                    return Err(FclError::semantic(
                        info.keyword_pos,
                        format!("FUZZIFY block for `{}` declares no term", block.variable),
                    ))
                }
                1 => {}
                _ => {
                    return Err(FclError::semantic(
                        info.term_positions[1],
                        format!(
                            "LING variable `{}` takes exactly one `ling` term",
                            block.variable
                        ),
                    ))
                }
            }
        }
        Ok(())
    }
}
