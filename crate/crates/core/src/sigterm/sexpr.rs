//! Prefix s-expressions: `(mul x0 (mul x1 x0))`. Constants print as bare
//! atoms; `(e)` is accepted too. Variable labels that are not plain atoms,
//! or that collide with a symbol name, are written `{label}`.

use super::{Signature, Term, TermError};

/// How variable indices are named.
#[derive(Debug, Clone, Copy)]
pub enum VarNames<'a> {
    /// The countable supply `x0, x1, …`.
    Supply,
    /// Element labels of a carrier.
    Labels(&'a [String]),
}

pub fn var_label(i: usize) -> String {
    format!("x{i}")
}

impl VarNames<'_> {
    fn label(&self, i: usize) -> String {
        match self {
            VarNames::Supply => var_label(i),
            VarNames::Labels(ls) => ls[i].clone(),
        }
    }

    fn resolve(&self, s: &str) -> Option<usize> {
        match self {
            VarNames::Supply => {
                let digits = s.strip_prefix('x')?;
                if digits.is_empty() || (digits.len() > 1 && digits.starts_with('0')) {
                    return None;
                }
                digits.parse().ok()
            }
            VarNames::Labels(ls) => ls.iter().position(|l| l == s),
        }
    }
}

fn is_plain_atom(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || "(){}".contains(c))
}

pub fn format_term(t: &Term, sig: &Signature, vars: VarNames<'_>) -> String {
    let mut out = String::new();
    write_term(t, sig, vars, &mut out);
    out
}

fn write_term(t: &Term, sig: &Signature, vars: VarNames<'_>, out: &mut String) {
    match t {
        Term::Var(x) => {
            let l = vars.label(*x);
            if is_plain_atom(&l) && sig.lookup(&l).is_none() {
                out.push_str(&l);
            } else {
                out.push('{');
                out.push_str(&l);
                out.push('}');
            }
        }
        Term::App(f, args) if args.is_empty() => out.push_str(sig.name(*f)),
        Term::App(f, args) => {
            out.push('(');
            out.push_str(sig.name(*f));
            for a in args {
                out.push(' ');
                write_term(a, sig, vars, out);
            }
            out.push(')');
        }
    }
}

#[derive(Debug, PartialEq)]
enum Tok<'s> {
    Open,
    Close,
    Atom(&'s str),
    Quoted(&'s str),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok<'_>)>, TermError> {
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            b'{' => {
                let start = i;
                let mut depth = 0usize;
                loop {
                    match bytes.get(i) {
                        None => {
                            return Err(TermError::Syntax {
                                pos: start,
                                msg: "unclosed `{`".into(),
                            })
                        }
                        Some(b'{') => depth += 1,
                        Some(b'}') => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        _ => {}
                    }
                    i += 1;
                }
                out.push((start, Tok::Quoted(&s[start + 1..i])));
                i += 1;
            }
            b'}' => {
                return Err(TermError::Syntax {
                    pos: i,
                    msg: "unexpected `}`".into(),
                })
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && !b"(){}".contains(&bytes[i])
                {
                    i += 1;
                }
                out.push((start, Tok::Atom(&s[start..i])));
            }
        }
    }
    Ok(out)
}

/// Parses one term; atoms resolve to constants before variables.
pub fn parse_term(text: &str, sig: &Signature, vars: VarNames<'_>) -> Result<Term, TermError> {
    let toks = tokenize(text)?;
    let mut pos = 0;
    let t = parse_at(&toks, &mut pos, sig, vars, text.len())?;
    if let Some((at, _)) = toks.get(pos) {
        return Err(TermError::Syntax {
            pos: *at,
            msg: "trailing input".into(),
        });
    }
    Ok(t)
}

fn parse_at(
    toks: &[(usize, Tok<'_>)],
    pos: &mut usize,
    sig: &Signature,
    vars: VarNames<'_>,
    end: usize,
) -> Result<Term, TermError> {
    let Some((at, tok)) = toks.get(*pos) else {
        return Err(TermError::Syntax {
            pos: end,
            msg: "unexpected end of input".into(),
        });
    };
    *pos += 1;
    match tok {
        Tok::Quoted(l) => vars
            .resolve(l)
            .map(Term::Var)
            .ok_or_else(|| TermError::UnknownVariable(l.to_string())),
        Tok::Atom(a) => match sig.lookup(a) {
            Some(f) if sig.arity(f) == 0 => Ok(Term::constant(f)),
            Some(f) => Err(TermError::Arity {
                name: a.to_string(),
                arity: sig.arity(f),
                got: 0,
            }),
            None => vars
                .resolve(a)
                .map(Term::Var)
                .ok_or_else(|| TermError::UnknownVariable(a.to_string())),
        },
        Tok::Close => Err(TermError::Syntax {
            pos: *at,
            msg: "unexpected `)`".into(),
        }),
        Tok::Open => {
            let Some((hat, Tok::Atom(head))) = toks.get(*pos) else {
                return Err(TermError::Syntax {
                    pos: *at,
                    msg: "expected a symbol after `(`".into(),
                });
            };
            *pos += 1;
            let f = sig
                .lookup(head)
                .ok_or_else(|| TermError::UnknownSymbol(head.to_string()))?;
            let mut args = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some((_, Tok::Close)) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => args.push(parse_at(toks, pos, sig, vars, end)?),
                    None => {
                        return Err(TermError::Syntax {
                            pos: *hat,
                            msg: "unclosed `(`".into(),
                        })
                    }
                }
            }
            if args.len() != sig.arity(f) {
                return Err(TermError::Arity {
                    name: head.to_string(),
                    arity: sig.arity(f),
                    got: args.len(),
                });
            }
            Ok(Term::App(f, args))
        }
    }
}
