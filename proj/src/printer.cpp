#include "fathom/printer.hpp"

#include <sstream>

namespace fathom::minic {

namespace {

void print_expr(std::ostream& os, const Expr& e);

void print_paren(std::ostream& os, const Expr& e) {
    bool atom = e.kind == Expr::Kind::IntLit || e.kind == Expr::Kind::Var ||
                e.kind == Expr::Kind::Call || e.kind == Expr::Kind::StrLit ||
                e.kind == Expr::Kind::Index;
    if (atom) {
        print_expr(os, e);
    } else {
        os << '(';
        print_expr(os, e);
        os << ')';
    }
}

void print_string(std::ostream& os, const std::string& bytes) {
    os << '"';
    for (char c : bytes) {
        switch (c) {
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            case '\r': os << "\\r"; break;
            case '\0': os << "\\0"; break;
            case '\\': os << "\\\\"; break;
            case '"': os << "\\\""; break;
            default: os << c;
        }
    }
    os << '"';
}

void print_expr(std::ostream& os, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
            if (e.int_value < 0) {
                os << '(' << e.int_value << ')';
            } else {
                os << e.int_value;
            }
            break;
        case Expr::Kind::StrLit:
            print_string(os, e.text);
            break;
        case Expr::Kind::Var:
            os << e.text;
            break;
        case Expr::Kind::Index:
            print_paren(os, *e.args[0]);
            os << '[';
            print_expr(os, *e.args[1]);
            os << ']';
            break;
        case Expr::Kind::Unary:
            os << e.text;
            print_paren(os, *e.args[0]);
            break;
        case Expr::Kind::Binary:
            print_paren(os, *e.args[0]);
            os << ' ' << e.text << ' ';
            print_paren(os, *e.args[1]);
            break;
        case Expr::Kind::Ternary:
            print_paren(os, *e.args[0]);
            os << " ? ";
            print_paren(os, *e.args[1]);
            os << " : ";
            print_paren(os, *e.args[2]);
            break;
        case Expr::Kind::Call:
            os << e.text << '(';
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) os << ", ";
                print_expr(os, *e.args[i]);
            }
            os << ')';
            break;
        case Expr::Kind::Cast:
            os << "(int)";
            print_paren(os, *e.args[0]);
            break;
    }
}

void print_stmt(std::ostream& os, const Stmt& s, int indent);

void print_block_body(std::ostream& os, const Stmt& block, int indent) {
    os << "{\n";
    for (const auto& c : block.stmts) print_stmt(os, *c, indent + 1);
    for (int i = 0; i < indent; ++i) os << "    ";
    os << "}";
}

void print_stmt(std::ostream& os, const Stmt& s, int indent) {
    auto pad = [&] {
        for (int i = 0; i < indent; ++i) os << "    ";
    };
    switch (s.kind) {
        case Stmt::Kind::Block:
            pad();
            print_block_body(os, s, indent);
            os << '\n';
            break;
        case Stmt::Kind::Decl:
            pad();
            os << (s.decl_type == Type::CharPtr ? "const char* " : "int ") << s.name;
            if (s.expr) {
                os << " = ";
                print_expr(os, *s.expr);
            }
            os << ";\n";
            break;
        case Stmt::Kind::Assign:
            pad();
            os << s.name << " = ";
            print_expr(os, *s.expr);
            os << ";\n";
            break;
        case Stmt::Kind::CompoundAssign:
            pad();
            os << s.name << ' ' << s.op << ' ';
            print_expr(os, *s.expr);
            os << ";\n";
            break;
        case Stmt::Kind::If:
            pad();
            os << "if (";
            print_expr(os, *s.expr);
            os << ") ";
            print_block_body(os, *s.body, indent);
            if (s.else_body) {
                os << " else ";
                print_block_body(os, *s.else_body, indent);
            }
            os << '\n';
            break;
        case Stmt::Kind::While:
            pad();
            os << "while (";
            print_expr(os, *s.expr);
            os << ") ";
            print_block_body(os, *s.body, indent);
            os << '\n';
            break;
        case Stmt::Kind::For:
            pad();
            os << "for (";
            if (s.for_init) {
                std::ostringstream tmp;
                print_stmt(tmp, *s.for_init, 0);
                std::string txt = tmp.str();  // strip ";\n"
                os << txt.substr(0, txt.size() - 2);
            }
            os << "; ";
            print_expr(os, *s.expr);
            os << "; ";
            if (s.for_update) {
                std::ostringstream tmp;
                print_stmt(tmp, *s.for_update, 0);
                std::string txt = tmp.str();
                os << txt.substr(0, txt.size() - 2);
            }
            os << ") ";
            print_block_body(os, *s.body, indent);
            os << '\n';
            break;
        case Stmt::Kind::Break:
            pad();
            os << "break;\n";
            break;
        case Stmt::Kind::Continue:
            pad();
            os << "continue;\n";
            break;
        case Stmt::Kind::Return:
            pad();
            os << "return";
            if (s.expr) {
                os << ' ';
                print_expr(os, *s.expr);
            }
            os << ";\n";
            break;
        case Stmt::Kind::ExprStmt:
            pad();
            print_expr(os, *s.expr);
            os << ";\n";
            break;
        case Stmt::Kind::Assert:
            pad();
            os << "assert(";
            print_expr(os, *s.expr);
            os << ");\n";
            break;
        case Stmt::Kind::Assume:
            pad();
            os << "assume(";
            print_expr(os, *s.expr);
            os << ");\n";
            break;
    }
}

}  // namespace

std::string print(const Expr& e) {
    std::ostringstream os;
    print_expr(os, e);
    return os.str();
}

std::string print(const Stmt& s, int indent) {
    std::ostringstream os;
    print_stmt(os, s, indent);
    return os.str();
}

std::string print(const Program& prog) {
    std::ostringstream os;
    for (std::size_t i = 0; i < prog.functions.size(); ++i) {
        const FunctionDef& fn = prog.functions[i];
        if (i) os << '\n';
        os << type_name(fn.return_type) << ' ' << fn.name << '(';
        for (std::size_t j = 0; j < fn.params.size(); ++j) {
            if (j) os << ", ";
            os << (fn.params[j].type == Type::CharPtr ? "const char* " : "int ")
               << fn.params[j].name;
        }
        os << ") ";
        print_block_body(os, *fn.body, 0);
        os << '\n';
    }
    return os.str();
}

}  // namespace fathom::minic
