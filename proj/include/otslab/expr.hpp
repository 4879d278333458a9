#pragma once

#include <memory>
#include <string>

#include "otslab/field.hpp"

namespace otslab {

/// Parsed closed-form expression of one variable. Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := unary ('^' factor)?            (right associative)
///   unary  := '-' unary | primary
///   primary:= number | 'x' | 'pi' | 'e' | sin|cos|exp '(' expr ')' | '(' expr ')'
class Expression {
  public:
    struct Node;

    static Expression parse(const std::string& text);

    double eval(double x) const;
    Field evaluate_on(Grid grid) const;
    const std::string& text() const { return text_; }

    Expression(Expression&&) noexcept;
    Expression& operator=(Expression&&) noexcept;
    ~Expression();

  private:
    explicit Expression(std::unique_ptr<Node> root, std::string text);
    std::unique_ptr<Node> root_;
    std::string text_;
};

} // namespace otslab
