"""Lexer and recursive-descent parser for the plan DSL.

The grammar is published in docs/plan_grammar.md. Beyond shape, the parser
enforces the structural constraints that make plans safe by construction:
a statement cap, loops only over expressions (never literals or ranges),
string/int/bool literals only, no returns inside loop bodies, exactly one
return on every control path with nothing unreachable after it, and every
identifier defined before use. Syntax problems raise E_PARSE with line and
column; constraint violations raise E_LIMIT.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..config import DEFAULT_CONFIG
from ..errors import PlanError
from . import ast

KEYWORDS = {"let", "if", "else", "for", "in", "return", "empty", "not",
            "sample", "true", "false"}
_PUNCT = "(){}[]=,"


@dataclass
class Token:
    kind: str  # IDENT KEYWORD STRING INT PUNCT EOF
    value: str
    line: int
    column: int


class Lexer:
    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.line = 1
        self.column = 1

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while self.pos < len(self.source):
            ch = self.source[self.pos]
            if ch == "#":
                while self.pos < len(self.source) and self.source[self.pos] != "\n":
                    self._advance()
                continue
            if ch.isspace():
                self._advance()
                continue
            if ch.isalpha() or ch == "_":
                out.append(self._identifier())
                continue
            if ch.isdigit():
                out.append(self._number())
                continue
            if ch in "\"'":
                out.append(self._string(ch))
                continue
            if ch in _PUNCT:
                out.append(Token("PUNCT", ch, self.line, self.column))
                self._advance()
                continue
            raise PlanError("E_PARSE", f"unexpected character {ch!r}", self.line, self.column)
        out.append(Token("EOF", "", self.line, self.column))
        return out

    def _advance(self):
        if self.source[self.pos] == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        self.pos += 1

    def _identifier(self) -> Token:
        line, col = self.line, self.column
        start = self.pos
        while self.pos < len(self.source) and (
            self.source[self.pos].isalnum() or self.source[self.pos] == "_"
        ):
            self._advance()
        text = self.source[start:self.pos]
        kind = "KEYWORD" if text in KEYWORDS else "IDENT"
        return Token(kind, text, line, col)

    def _number(self) -> Token:
        line, col = self.line, self.column
        start = self.pos
        while self.pos < len(self.source) and self.source[self.pos].isdigit():
            self._advance()
        return Token("INT", self.source[start:self.pos], line, col)

    def _string(self, quote: str) -> Token:
        line, col = self.line, self.column
        self._advance()
        start = self.pos
        while self.pos < len(self.source) and self.source[self.pos] != quote:
            if self.source[self.pos] == "\n":
                raise PlanError("E_PARSE", "unterminated string literal", line, col)
            self._advance()
        if self.pos >= len(self.source):
            raise PlanError("E_PARSE", "unterminated string literal", line, col)
        text = self.source[start:self.pos]
        self._advance()  # closing quote
        return Token("STRING", text, line, col)


class Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    # -- helpers --------------------------------------------------------------

    def _peek(self) -> Token:
        return self.tokens[self.pos]

    def _next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def _expect(self, kind: str, value: str | None = None) -> Token:
        tok = self._peek()
        if tok.kind != kind or (value is not None and tok.value != value):
            want = value if value is not None else kind
            raise PlanError("E_PARSE", f"expected {want!r}, found {tok.value or tok.kind!r}",
                            tok.line, tok.column)
        return self._next()

    def _at_keyword(self, word: str) -> bool:
        tok = self._peek()
        return tok.kind == "KEYWORD" and tok.value == word

    # -- grammar --------------------------------------------------------------

    def program(self) -> ast.PlanProgram:
        statements = []
        scope: set[str] = set()
        while self._peek().kind != "EOF":
            statements.append(self.statement(scope))
        if not statements:
            tok = self._peek()
            raise PlanError("E_PARSE", "empty plan", tok.line, tok.column)
        return ast.PlanProgram(statements=statements, source=self.source)

    def statement(self, scope: set[str]) -> ast.Stmt:
        tok = self._peek()
        if tok.kind != "KEYWORD":
            raise PlanError("E_PARSE", f"expected a statement, found {tok.value!r}",
                            tok.line, tok.column)
        if tok.value == "let":
            return self.let_stmt(scope)
        if tok.value == "if":
            return self.if_stmt(scope)
        if tok.value == "for":
            return self.for_stmt(scope)
        if tok.value == "return":
            return self.return_stmt(scope)
        raise PlanError("E_PARSE", f"unexpected keyword {tok.value!r}", tok.line, tok.column)

    def let_stmt(self, scope: set[str]) -> ast.Let:
        tok = self._expect("KEYWORD", "let")
        name = self._expect("IDENT").value
        self._expect("PUNCT", "=")
        expr = self.expr(scope)
        scope.add(name)
        return ast.Let(name=name, expr=expr, line=tok.line, column=tok.column)

    def if_stmt(self, scope: set[str]) -> ast.If:
        tok = self._expect("KEYWORD", "if")
        cond = self.cond(scope)
        then_block = self.block(scope)
        else_block = None
        if self._at_keyword("else"):
            self._next()
            else_block = self.block(scope)
        return ast.If(cond=cond, then_block=then_block, else_block=else_block,
                      line=tok.line, column=tok.column)

    def for_stmt(self, scope: set[str]) -> ast.ForEach:
        tok = self._expect("KEYWORD", "for")
        name = self._expect("IDENT").value
        self._expect("KEYWORD", "in")
        iterable = self.expr(scope)
        if isinstance(iterable, ast.Literal):
            raise PlanError("E_LIMIT", "loops iterate expressions, not literals or ranges",
                            tok.line, tok.column)
        body = self.block(scope | {name})
        return ast.ForEach(name=name, iterable=iterable, body=body,
                           line=tok.line, column=tok.column)

    def return_stmt(self, scope: set[str]) -> ast.Return:
        tok = self._expect("KEYWORD", "return")
        expr = self.expr(scope)
        return ast.Return(expr=expr, line=tok.line, column=tok.column)

    def block(self, scope: set[str]) -> list[ast.Stmt]:
        self._expect("PUNCT", "{")
        inner = set(scope)  # child scope: bindings do not leak to siblings
        statements = []
        while not (self._peek().kind == "PUNCT" and self._peek().value == "}"):
            if self._peek().kind == "EOF":
                tok = self._peek()
                raise PlanError("E_PARSE", "unterminated block", tok.line, tok.column)
            statements.append(self.statement(inner))
        self._expect("PUNCT", "}")
        return statements

    def cond(self, scope: set[str]) -> ast.Cond:
        tok = self._peek()
        if self._at_keyword("not"):
            self._next()
            return ast.Not(inner=self.cond(scope), line=tok.line, column=tok.column)
        if self._at_keyword("empty"):
            self._next()
            self._expect("PUNCT", "(")
            target = self.expr(scope)
            self._expect("PUNCT", ")")
            return ast.Empty(target=target, line=tok.line, column=tok.column)
        raise PlanError("E_PARSE", f"expected a condition, found {tok.value or tok.kind!r}",
                        tok.line, tok.column)

    def expr(self, scope: set[str]) -> ast.Expr:
        node = self.primary(scope)
        while self._peek().kind == "PUNCT" and self._peek().value == "[":
            tok = self._next()
            idx = self._expect("INT")
            self._expect("PUNCT", "]")
            node = ast.Index(target=node, index=int(idx.value), line=tok.line, column=tok.column)
        return node

    def primary(self, scope: set[str]) -> ast.Expr:
        tok = self._peek()
        if tok.kind == "STRING":
            self._next()
            return ast.Literal(value=tok.value, line=tok.line, column=tok.column)
        if tok.kind == "INT":
            self._next()
            return ast.Literal(value=int(tok.value), line=tok.line, column=tok.column)
        if tok.kind == "KEYWORD" and tok.value in ("true", "false"):
            self._next()
            return ast.Literal(value=tok.value == "true", line=tok.line, column=tok.column)
        if tok.kind == "KEYWORD" and tok.value == "sample":
            self._next()
            self._expect("PUNCT", "(")
            target = self.expr(scope)
            self._expect("PUNCT", ",")
            k = self._expect("INT")
            self._expect("PUNCT", ")")
            return ast.Sample(target=target, k=int(k.value), line=tok.line, column=tok.column)
        if tok.kind == "IDENT":
            self._next()
            if self._peek().kind == "PUNCT" and self._peek().value == "(":
                return self.call(tok, scope)
            if tok.value not in scope:
                raise PlanError("E_PARSE", f"undefined identifier {tok.value!r}",
                                tok.line, tok.column)
            return ast.Var(name=tok.value, line=tok.line, column=tok.column)
        raise PlanError("E_PARSE", f"expected an expression, found {tok.value or tok.kind!r}",
                        tok.line, tok.column)

    def call(self, name_tok: Token, scope: set[str]) -> ast.Call:
        self._expect("PUNCT", "(")
        kwargs: list[tuple[str, ast.Expr]] = []
        if not (self._peek().kind == "PUNCT" and self._peek().value == ")"):
            while True:
                key = self._expect("IDENT").value
                self._expect("PUNCT", "=")
                kwargs.append((key, self.expr(scope)))
                if self._peek().kind == "PUNCT" and self._peek().value == ",":
                    self._next()
                    continue
                break
        self._expect("PUNCT", ")")
        return ast.Call(tool=name_tok.value, kwargs=kwargs,
                        line=name_tok.line, column=name_tok.column)


def _check_structure(program: ast.PlanProgram, statement_cap: int) -> None:
    count = program.statement_count()
    if count > statement_cap:
        raise PlanError("E_LIMIT", f"plan has {count} statements, cap is {statement_cap}")

    def forbid_return(block: list[ast.Stmt]):
        for stmt in block:
            if isinstance(stmt, ast.Return):
                raise PlanError("E_LIMIT", "return is not allowed inside a loop body",
                                stmt.line, stmt.column)
            if isinstance(stmt, ast.If):
                forbid_return(stmt.then_block)
                if stmt.else_block is not None:
                    forbid_return(stmt.else_block)
            elif isinstance(stmt, ast.ForEach):
                forbid_return(stmt.body)

    def check_block(block: list[ast.Stmt]) -> bool:
        """Validate one block and report whether every path through it returns."""
        terminated = False
        for stmt in block:
            if terminated:
                raise PlanError("E_LIMIT", "unreachable statement after return",
                                stmt.line, stmt.column)
            if isinstance(stmt, ast.Return):
                terminated = True
            elif isinstance(stmt, ast.If):
                then_done = check_block(stmt.then_block)
                else_done = (check_block(stmt.else_block)
                             if stmt.else_block is not None else False)
                terminated = then_done and else_done
            elif isinstance(stmt, ast.ForEach):
                forbid_return(stmt.body)
                check_block(stmt.body)
        return terminated

    if not check_block(program.statements):
        raise PlanError("E_LIMIT", "plan must end every control path with a single return")


def parse_plan(source: str, statement_cap: int | None = None) -> ast.PlanProgram:
    """Parse and structurally validate plan source."""
    cap = DEFAULT_CONFIG.statement_cap if statement_cap is None else statement_cap
    if cap < 1:
        raise ValueError("statement cap must be positive")
    tokens = Lexer(source).tokens()
    program = Parser(tokens, source).program()
    _check_structure(program, cap)
    return program
