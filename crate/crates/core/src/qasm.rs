//! openQASM 2.0 serialization.
//!
//! Supported subset: the `OPENQASM 2.0;` header, an optional literal
//! `include "qelib1.inc";` (emitted but never resolved), exactly one `qreg`,
//! and gate statements over the qelib1 names
//! `h x y z u1/p rx ry rz cu1/cp cx cz swap ccx`. Angle arguments accept
//! constant arithmetic over `+ - * /`, parentheses, `pi`, and numeric
//! literals. Line comments (`//`) are skipped; CRLF input is accepted.
//!
//! Classical registers, measurement, barriers, and custom gate definitions
//! are rejected with positioned errors rather than silently skipped.

use crate::circuit::QuantumCircuit;
use crate::error::{Error, Result};
use crate::gates::{Gate, GateKind};

/// Parsed form of a program: a single register plus the resolved gate list.
///
/// `parse(emit(c))` reproduces the gate list structurally.
#[derive(Debug, Clone, PartialEq)]
pub struct QasmProgram {
    pub version: String,
    pub register_name: String,
    pub register_size: usize,
    pub gates: Vec<Gate>,
}

impl QasmProgram {
    pub fn into_circuit(self) -> Result<QuantumCircuit> {
        let mut circuit = QuantumCircuit::new(self.register_size)?;
        for gate in self.gates {
            circuit.push_back(gate)?;
        }
        Ok(circuit)
    }
}

/// Serializes a circuit as openQASM 2.0 text (LF line endings, UTF-8).
///
/// Gates carrying arbitrary matrices or zero-controls have no qelib1 name and
/// produce an error naming the offending gate index.
pub fn emit(circuit: &QuantumCircuit) -> Result<String> {
    let mut out = String::with_capacity(64 + circuit.len() * 16);
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", circuit.nb_qubits()));
    for (index, gate) in circuit.gates().iter().enumerate() {
        if gate.control_states().iter().any(|&s| !s) {
            return Err(Error::QasmUnsupportedGate {
                index,
                name: format!("zero-controlled {}", gate.kind().name()),
            });
        }
        let q = gate.qubits();
        let statement = match gate.kind() {
            GateKind::H => format!("h q[{}];", q[0]),
            GateKind::X => format!("x q[{}];", q[0]),
            GateKind::Y => format!("y q[{}];", q[0]),
            GateKind::Z => format!("z q[{}];", q[0]),
            GateKind::P(theta) => format!("u1({theta}) q[{}];", q[0]),
            GateKind::Rx(theta) => format!("rx({theta}) q[{}];", q[0]),
            GateKind::Ry(theta) => format!("ry({theta}) q[{}];", q[0]),
            GateKind::Rz(theta) => format!("rz({theta}) q[{}];", q[0]),
            GateKind::Cp(theta) => format!("cu1({theta}) q[{}],q[{}];", q[0], q[1]),
            GateKind::Cnot => format!("cx q[{}],q[{}];", q[0], q[1]),
            GateKind::Cz => format!("cz q[{}],q[{}];", q[0], q[1]),
            GateKind::Swap => format!("swap q[{}],q[{}];", q[0], q[1]),
            GateKind::Ccx => format!("ccx q[{}],q[{}],q[{}];", q[0], q[1], q[2]),
            GateKind::U2(_) | GateKind::U4(_) | GateKind::Cu2(_) => {
                return Err(Error::QasmUnsupportedGate {
                    index,
                    name: gate.kind().name().to_string(),
                })
            }
        };
        out.push_str(&statement);
        out.push('\n');
    }
    Ok(out)
}

/// Parses openQASM source into a circuit.
pub fn parse(source: &str) -> Result<QuantumCircuit> {
    parse_program(source)?.into_circuit()
}

/// Parses openQASM source, keeping the register name.
pub fn parse_program(source: &str) -> Result<QasmProgram> {
    let tokens = lex(source)?;
    Parser::new(tokens).program()
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(String),
    Int(usize),
    Real(f64),
    Str(String),
    Symbol(char),
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    kind: TokenKind,
    line: usize,
    col: usize,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Ident(s) => format!("'{s}'"),
            TokenKind::Int(v) => format!("'{v}'"),
            TokenKind::Real(v) => format!("'{v}'"),
            TokenKind::Str(s) => format!("\"{s}\""),
            TokenKind::Symbol(c) => format!("'{c}'"),
        }
    }
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::QasmSyntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(source: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = source.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! bump {
        () => {{
            let ch = chars.next();
            if ch == Some('\n') {
                line += 1;
                col = 1;
            } else if ch.is_some() {
                col += 1;
            }
            ch
        }};
    }

    while let Some(&ch) = chars.peek() {
        let (tok_line, tok_col) = (line, col);
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    tokens.push(Token {
                        kind: TokenKind::Symbol('/'),
                        line: tok_line,
                        col: tok_col,
                    });
                }
            }
            '(' | ')' | '[' | ']' | ',' | ';' | '+' | '-' | '*' | '>' => {
                bump!();
                tokens.push(Token {
                    kind: TokenKind::Symbol(ch),
                    line: tok_line,
                    col: tok_col,
                });
            }
            '"' => {
                bump!();
                let mut text = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some(c) => text.push(c),
                        None => return Err(syntax(tok_line, tok_col, "unterminated string")),
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Str(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut text = String::new();
                let mut is_real = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        bump!();
                    } else if c == '.' {
                        is_real = true;
                        text.push(c);
                        bump!();
                    } else if c == 'e' || c == 'E' {
                        is_real = true;
                        text.push(c);
                        bump!();
                        if let Some(&sign @ ('+' | '-')) = chars.peek() {
                            text.push(sign);
                            bump!();
                        }
                    } else {
                        break;
                    }
                }
                let kind = if is_real {
                    TokenKind::Real(text.parse().map_err(|_| {
                        syntax(tok_line, tok_col, format!("bad number literal '{text}'"))
                    })?)
                } else {
                    TokenKind::Int(text.parse().map_err(|_| {
                        syntax(tok_line, tok_col, format!("bad integer literal '{text}'"))
                    })?)
                };
                tokens.push(Token {
                    kind,
                    line: tok_line,
                    col: tok_col,
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        text.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text),
                    line: tok_line,
                    col: tok_col,
                });
            }
            other => {
                return Err(syntax(
                    tok_line,
                    tok_col,
                    format!("unexpected character '{other}'"),
                ))
            }
        }
    }
    Ok(tokens)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

/// Statement keywords that are valid openQASM 2.0 but outside this subset.
const UNSUPPORTED_KEYWORDS: &[&str] = &[
    "creg", "measure", "barrier", "gate", "if", "opaque", "reset",
];

impl Parser {
    fn new(tokens: Vec<Token>) -> Self {
        let (end_line, end_col) = tokens.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
        Self {
            tokens,
            pos: 0,
            end_line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn here(&self) -> (usize, usize) {
        self.peek()
            .map(|t| (t.line, t.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn expect_symbol(&mut self, sym: char, context: &str) -> Result<()> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Symbol(c),
                ..
            }) if c == sym => Ok(()),
            Some(tok) => Err(syntax(
                tok.line,
                tok.col,
                format!("expected '{sym}' {context}, found {}", tok.kind.describe()),
            )),
            None => Err(syntax(
                line,
                col,
                format!("expected '{sym}' {context}, found end of input"),
            )),
        }
    }

    fn expect_int(&mut self, context: &str) -> Result<(usize, usize, usize)> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Int(v),
                line,
                col,
            }) => Ok((v, line, col)),
            Some(tok) => Err(syntax(
                tok.line,
                tok.col,
                format!("expected integer {context}, found {}", tok.kind.describe()),
            )),
            None => Err(syntax(
                line,
                col,
                format!("expected integer {context}, found end of input"),
            )),
        }
    }

    fn expect_ident(&mut self, context: &str) -> Result<(String, usize, usize)> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Ident(name),
                line,
                col,
            }) => Ok((name, line, col)),
            Some(tok) => Err(syntax(
                tok.line,
                tok.col,
                format!(
                    "expected identifier {context}, found {}",
                    tok.kind.describe()
                ),
            )),
            None => Err(syntax(
                line,
                col,
                format!("expected identifier {context}, found end of input"),
            )),
        }
    }

    fn program(mut self) -> Result<QasmProgram> {
        // Header: OPENQASM 2.0;
        let (word, line, col) = self.expect_ident("at start of program")?;
        if word != "OPENQASM" {
            return Err(syntax(line, col, "program must start with 'OPENQASM 2.0;'"));
        }
        let (vline, vcol) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Real(2.0),
                ..
            }) => {}
            Some(tok) => {
                return Err(Error::QasmUnsupportedFeature {
                    line: tok.line,
                    col: tok.col,
                    feature: format!("openQASM version {}", tok.kind.describe()),
                })
            }
            None => return Err(syntax(vline, vcol, "missing version after OPENQASM")),
        }
        self.expect_symbol(';', "after version")?;

        let mut register: Option<(String, usize)> = None;
        let mut gates = Vec::new();

        while self.peek().is_some() {
            let (name, line, col) = self.expect_ident("at start of statement")?;
            match name.as_str() {
                "include" => {
                    let (iline, icol) = self.here();
                    match self.next() {
                        Some(Token {
                            kind: TokenKind::Str(path),
                            line,
                            col,
                        }) => {
                            if path != "qelib1.inc" {
                                return Err(Error::QasmUnsupportedFeature {
                                    line,
                                    col,
                                    feature: format!("include \"{path}\""),
                                });
                            }
                        }
                        _ => return Err(syntax(iline, icol, "expected file name after include")),
                    }
                    self.expect_symbol(';', "after include")?;
                }
                "qreg" => {
                    if register.is_some() {
                        return Err(Error::QasmUnsupportedFeature {
                            line,
                            col,
                            feature: "multiple quantum registers".to_string(),
                        });
                    }
                    let (reg_name, ..) = self.expect_ident("after qreg")?;
                    self.expect_symbol('[', "after register name")?;
                    let (size, sline, scol) = self.expect_int("as register size")?;
                    self.expect_symbol(']', "after register size")?;
                    self.expect_symbol(';', "after qreg declaration")?;
                    if size == 0 {
                        return Err(Error::QasmSemantic {
                            line: sline,
                            col: scol,
                            msg: "register size must be at least 1".to_string(),
                        });
                    }
                    register = Some((reg_name, size));
                }
                kw if UNSUPPORTED_KEYWORDS.contains(&kw) => {
                    return Err(Error::QasmUnsupportedFeature {
                        line,
                        col,
                        feature: format!("'{kw}' statement"),
                    })
                }
                gate_name => {
                    let Some((reg_name, reg_size)) = &register else {
                        return Err(Error::QasmSemantic {
                            line,
                            col,
                            msg: format!("gate '{gate_name}' before qreg declaration"),
                        });
                    };
                    let gate =
                        self.gate_statement(gate_name, line, col, reg_name.clone(), *reg_size)?;
                    gates.push(gate);
                }
            }
        }

        let Some((register_name, register_size)) = register else {
            return Err(Error::QasmSemantic {
                line: self.end_line,
                col: self.end_col,
                msg: "missing qreg declaration".to_string(),
            });
        };
        Ok(QasmProgram {
            version: "2.0".to_string(),
            register_name,
            register_size,
            gates,
        })
    }

    fn gate_statement(
        &mut self,
        name: &str,
        line: usize,
        col: usize,
        reg_name: String,
        reg_size: usize,
    ) -> Result<Gate> {
        let (param_count, operand_count) = match name {
            "h" | "x" | "y" | "z" => (0, 1),
            "u1" | "p" | "rx" | "ry" | "rz" => (1, 1),
            "cu1" | "cp" => (1, 2),
            "cx" | "cz" | "swap" => (0, 2),
            "ccx" => (0, 3),
            _ => {
                return Err(Error::QasmUnknownGate {
                    line,
                    col,
                    name: name.to_string(),
                })
            }
        };

        let mut params = Vec::new();
        if let Some(Token {
            kind: TokenKind::Symbol('('),
            ..
        }) = self.peek()
        {
            self.next();
            loop {
                params.push(self.expression()?);
                match self.peek() {
                    Some(Token {
                        kind: TokenKind::Symbol(','),
                        ..
                    }) => {
                        self.next();
                    }
                    _ => break,
                }
            }
            self.expect_symbol(')', "after gate parameters")?;
        }
        if params.len() != param_count {
            return Err(Error::QasmSemantic {
                line,
                col,
                msg: format!(
                    "gate '{name}' expects {param_count} parameter(s), got {}",
                    params.len()
                ),
            });
        }

        let mut operands = Vec::new();
        loop {
            let (op_name, oline, ocol) = self.expect_ident("as qubit operand")?;
            if op_name != reg_name {
                return Err(Error::QasmSemantic {
                    line: oline,
                    col: ocol,
                    msg: format!("unknown register '{op_name}', declared register is '{reg_name}'"),
                });
            }
            self.expect_symbol('[', "in qubit operand")?;
            let (index, xline, xcol) = self.expect_int("as qubit index")?;
            self.expect_symbol(']', "in qubit operand")?;
            if index >= reg_size {
                return Err(Error::QasmSemantic {
                    line: xline,
                    col: xcol,
                    msg: format!("qubit index {index} out of bounds for {reg_name}[{reg_size}]"),
                });
            }
            operands.push(index);
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Symbol(','),
                    ..
                }) => {
                    self.next();
                }
                _ => break,
            }
        }
        self.expect_symbol(';', "after gate statement")?;

        if operands.len() != operand_count {
            return Err(Error::QasmSemantic {
                line,
                col,
                msg: format!(
                    "gate '{name}' expects {operand_count} operand(s), got {}",
                    operands.len()
                ),
            });
        }

        let kind = match name {
            "h" => GateKind::H,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "u1" | "p" => GateKind::P(params[0]),
            "rx" => GateKind::Rx(params[0]),
            "ry" => GateKind::Ry(params[0]),
            "rz" => GateKind::Rz(params[0]),
            "cu1" | "cp" => GateKind::Cp(params[0]),
            "cx" => GateKind::Cnot,
            "cz" => GateKind::Cz,
            "swap" => GateKind::Swap,
            "ccx" => GateKind::Ccx,
            _ => unreachable!("filtered above"),
        };
        Gate::new(kind, operands).map_err(|err| Error::QasmSemantic {
            line,
            col,
            msg: err.to_string(),
        })
    }

    // expr := term (('+'|'-') term)*
    fn expression(&mut self) -> Result<f64> {
        let mut value = self.term()?;
        loop {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Symbol('+'),
                    ..
                }) => {
                    self.next();
                    value += self.term()?;
                }
                Some(Token {
                    kind: TokenKind::Symbol('-'),
                    ..
                }) => {
                    self.next();
                    value -= self.term()?;
                }
                _ => return Ok(value),
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<f64> {
        let mut value = self.factor()?;
        loop {
            match self.peek() {
                Some(Token {
                    kind: TokenKind::Symbol('*'),
                    ..
                }) => {
                    self.next();
                    value *= self.factor()?;
                }
                Some(Token {
                    kind: TokenKind::Symbol('/'),
                    ..
                }) => {
                    self.next();
                    value /= self.factor()?;
                }
                _ => return Ok(value),
            }
        }
    }

    // factor := '-' factor | number | 'pi' | '(' expr ')'
    fn factor(&mut self) -> Result<f64> {
        let (line, col) = self.here();
        match self.next() {
            Some(Token {
                kind: TokenKind::Symbol('-'),
                ..
            }) => Ok(-self.factor()?),
            Some(Token {
                kind: TokenKind::Int(v),
                ..
            }) => Ok(v as f64),
            Some(Token {
                kind: TokenKind::Real(v),
                ..
            }) => Ok(v),
            Some(Token {
                kind: TokenKind::Ident(word),
                line,
                col,
            }) => {
                if word == "pi" {
                    Ok(std::f64::consts::PI)
                } else {
                    Err(syntax(
                        line,
                        col,
                        format!("unknown symbol '{word}' in angle expression"),
                    ))
                }
            }
            Some(Token {
                kind: TokenKind::Symbol('('),
                ..
            }) => {
                let value = self.expression()?;
                self.expect_symbol(')', "in angle expression")?;
                Ok(value)
            }
            Some(tok) => Err(syntax(
                tok.line,
                tok.col,
                format!("unexpected {} in angle expression", tok.kind.describe()),
            )),
            None => Err(syntax(line, col, "unexpected end of angle expression")),
        }
    }
}
