"""AST nodes for the plan DSL. Every node carries its source location."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Node:
    line: int = field(default=0, kw_only=True)
    column: int = field(default=0, kw_only=True)


# -- expressions --------------------------------------------------------------

@dataclass
class Expr(Node):
    pass


@dataclass
class Literal(Expr):
    value: str | int | bool


@dataclass
class Var(Expr):
    name: str


@dataclass
class Call(Expr):
    tool: str
    kwargs: list[tuple[str, Expr]]


@dataclass
class Index(Expr):
    target: Expr
    index: int


@dataclass
class Sample(Expr):
    target: Expr
    k: int


# -- conditions ---------------------------------------------------------------

@dataclass
class Cond(Node):
    pass


@dataclass
class Empty(Cond):
    target: Expr


@dataclass
class Not(Cond):
    inner: Cond


# -- statements ---------------------------------------------------------------

@dataclass
class Stmt(Node):
    pass


@dataclass
class Let(Stmt):
    name: str
    expr: Expr


@dataclass
class If(Stmt):
    cond: Cond
    then_block: list[Stmt]
    else_block: list[Stmt] | None


@dataclass
class ForEach(Stmt):
    name: str
    iterable: Expr
    body: list[Stmt]


@dataclass
class Return(Stmt):
    expr: Expr


@dataclass
class PlanProgram:
    statements: list[Stmt]
    source: str

    def statement_count(self) -> int:
        def count(block: list[Stmt]) -> int:
            n = 0
            for stmt in block:
                n += 1
                if isinstance(stmt, If):
                    n += count(stmt.then_block)
                    if stmt.else_block is not None:
                        n += count(stmt.else_block)
                elif isinstance(stmt, ForEach):
                    n += count(stmt.body)
            return n
        return count(self.statements)
