from termcolor import colored

from paraprod.algebra.canonical import CanonicalSTForm
from paraprod.algebra.expr import GOperatorExpr


LETTER_COLOR = {
    'M': 'cyan',
    'S': 'green',
    'T': 'magenta'
}


def colored_word(word):
    if not word:
        return colored('I', 'white')
    return ''.join(colored(letter, LETTER_COLOR[letter]) if letter in LETTER_COLOR else letter
                   for letter in word)


def colored_expr(expr: GOperatorExpr):
    if expr.is_zero():
        return '0'
    parts = [f'{expr.terms[word]}*{colored_word(word)}' for word in expr.words()]
    if not expr.rank_one.is_zero():
        parts.append(f'[{expr.rank_one}]*{colored("delta0", "yellow")}')
    return ' + '.join(parts)


def colored_form(form: CanonicalSTForm):
    text = colored_expr(form.h0_expr())
    if not form.rank_one.is_zero():
        text += f' + [{form.rank_one}]*{colored("delta0", "yellow")}'
    if form.is_trivial():
        text += colored(' (trivial)', 'red')
    return text
