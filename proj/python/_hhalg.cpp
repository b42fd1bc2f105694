#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "definition.hpp"
#include "hhalg/errors.hpp"

namespace py = pybind11;
using namespace hhalg;

namespace {

py::object to_py(const Scalar& x) {
    if (x.get_den() == 1) return py::module_::import("builtins").attr("int")(x.get_num().get_str());
    return py::module_::import("fractions").attr("Fraction")(x.get_str());
}

py::object to_py(const mpz_class& x) { return py::module_::import("builtins").attr("int")(x.get_str()); }

py::list matrix_rows(const ExactMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(to_py(m(i, j)));
        rows.append(row);
    }
    return rows;
}

ExactMatrix integer_matrix(const std::vector<std::vector<long>>& rows) {
    if (!rows.empty())
        for (const auto& r : rows)
            if (r.size() != rows[0].size()) throw InputError("ragged matrix");
    if (rows.empty()) return ExactMatrix(GroundRing::integers(), 0, 0);
    return ExactMatrix::from_rows(GroundRing::integers(), rows);
}

py::dict report_dict(const AzumayaReport& rep) {
    py::dict d;
    d["subject"] = rep.subject;
    d["flavor"] = to_string(rep.flavor);
    py::list conds;
    for (const auto& c : rep.conditions) {
        py::dict cd;
        cd["name"] = c.name;
        cd["verdict"] = to_string(c.verdict);
        cd["witness"] = c.witness;
        conds.append(cd);
    }
    d["conditions"] = conds;
    d["overall"] = to_string(rep.overall());
    return d;
}

// A parsed definition file with lazily realized objects.
class Definition {
public:
    explicit Definition(cli::DefinitionFile d) : lib_(std::move(d)) {}

    std::vector<std::string> algebras() const {
        std::vector<std::string> out;
        for (const auto& a : lib_.definition().algebras) out.push_back(a.name);
        return out;
    }
    std::size_t rank(const std::string& name) { return lib_.algebra(name).rank(); }
    std::vector<int> degrees(const std::string& name) {
        const auto& a = lib_.algebra(name);
        std::vector<int> out;
        for (std::size_t i = 0; i < a.rank(); ++i) out.push_back(a.degree(i));
        return out;
    }
    BigradedTable ext(const std::string& name, int smax, int lo, int hi) {
        return ext_table(lib_.algebra(name), smax, lo, hi);
    }
    BigradedTable hochschild(const std::string& name, int nmax, int lo, int hi, bool enveloping) {
        const auto& a = lib_.algebra(name);
        return enveloping ? hochschild_via_enveloping(a, nmax, lo, hi) : hochschild_cohomology(a, nmax, lo, hi);
    }
    BigradedTable homology_of(const std::string& name, int lo, int hi) {
        return homology(Complex::from_algebra(lib_.algebra(name)), lo, hi);
    }
    py::dict azumaya(const std::string& name, const std::string& flavor, int lo, int hi) {
        const auto& a = lib_.algebra(name);
        if (flavor == "classical") return report_dict(check_classical_azumaya(a));
        if (flavor == "generalized") return report_dict(check_generalized_azumaya(a, Window{lo, hi}));
        if (flavor == "weak") return report_dict(check_weak_azumaya(a, Window{lo, hi}));
        throw InputError("flavor must be classical, generalized or weak");
    }
    py::dict mu_image(const std::string& name) {
        const auto& q = lib_.quotient(name);
        auto m = mu_homology_image(q);
        py::dict d;
        d["source_homology"] = m.source_homology.to_string();
        d["target_homology"] = m.target_homology.to_string();
        d["coefficient"] = py::make_tuple(to_py(m.coefficient.coeff), m.coefficient.v_power);
        d["reduced"] = py::make_tuple(to_py(m.reduced.coeff), m.reduced.v_power);
        d["modulus"] = to_py(m.modulus);
        d["unit"] = m.unit;
        d["note"] = m.note;
        return d;
    }
    py::dict isomorphic(const std::string& a, const std::string& b, std::size_t budget) {
        auto r = algebra_isomorphic(lib_.algebra(a), lib_.algebra(b), budget);
        py::dict d;
        d["isomorphic"] = r.isomorphic;
        d["candidates_examined"] = r.candidates_examined;
        d["reason"] = r.reason;
        return d;
    }
    py::dict completion_of(const std::string& context, const std::string& input, int smax, int lo, int hi) {
        auto c = lib_.context(context);
        auto m = input == "R" ? ModuleOverAlgebra::regular(c.r, Side::Right) : lib_.module(input);
        auto res = completion(m, c, smax, lo, hi);
        py::dict d;
        d["table"] = res.table;
        d["notes"] = res.notes;
        d["ranks_agree"] = internal_ranks(res.table, lo, hi) == internal_ranks(m.underlying(), lo, hi);
        return d;
    }
    py::dict roundtrip(const std::string& context, int smax, int lo, int hi) {
        auto c = lib_.context(context);
        py::dict d;
        d["A"] = roundtrip_FG(ModuleOverAlgebra::regular(c.a), c, smax, lo, hi).equivalent;
        d["E"] = roundtrip_FG(c.e_a, c, smax, lo, hi).equivalent;
        return d;
    }
    std::string emit() const { return cli::emit_definition(lib_.definition()); }

private:
    cli::Library lib_;
};

} // namespace

PYBIND11_MODULE(_hhalg, m) {
    m.doc() = "Exact graded homological algebra";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<BigradedTable>(m, "Table")
        .def("rank", &BigradedTable::rank, py::arg("s"), py::arg("t"))
        .def("total_rank", &BigradedTable::total_rank, py::arg("s"))
        .def("torsion",
             [](const BigradedTable& t, int s, int tt) {
                 py::list out;
                 for (const auto& d : t.at(s, tt).torsion) out.append(to_py(d));
                 return out;
             })
        .def("entries",
             [](const BigradedTable& t) {
                 py::dict d;
                 for (const auto& [k, v] : t.entries()) {
                     py::list tors;
                     for (const auto& x : v.torsion) tors.append(to_py(x));
                     d[py::make_tuple(k.first, k.second)] = py::make_tuple(v.free_rank, tors);
                 }
                 return d;
             })
        .def_property_readonly("period", &BigradedTable::period)
        .def_readonly("notes", &BigradedTable::notes)
        .def("to_tsv", &BigradedTable::to_tsv)
        .def("to_json", &BigradedTable::to_json)
        .def("__eq__", [](const BigradedTable& a, const BigradedTable& b) { return a == b; });

    py::class_<Definition>(m, "Definition")
        .def("algebras", &Definition::algebras)
        .def("rank", &Definition::rank, py::arg("algebra"))
        .def("degrees", &Definition::degrees, py::arg("algebra"))
        .def("ext", &Definition::ext, py::arg("algebra"), py::arg("smax") = 8, py::arg("lo") = -16, py::arg("hi") = 16)
        .def("hochschild", &Definition::hochschild, py::arg("algebra"), py::arg("nmax") = 4, py::arg("lo") = -16,
             py::arg("hi") = 16, py::arg("enveloping") = false)
        .def("homology", &Definition::homology_of, py::arg("algebra"), py::arg("lo") = -16, py::arg("hi") = 16)
        .def("azumaya", &Definition::azumaya, py::arg("algebra"), py::arg("flavor") = "classical", py::arg("lo") = -16,
             py::arg("hi") = 16)
        .def("mu_image", &Definition::mu_image, py::arg("algebra"))
        .def("isomorphic", &Definition::isomorphic, py::arg("a"), py::arg("b"), py::arg("budget") = 1u << 20)
        .def("completion", &Definition::completion_of, py::arg("context"), py::arg("input") = "R", py::arg("smax") = 8,
             py::arg("lo") = -16, py::arg("hi") = 16)
        .def("roundtrip", &Definition::roundtrip, py::arg("context"), py::arg("smax") = 8, py::arg("lo") = -16,
             py::arg("hi") = 16)
        .def("emit", &Definition::emit);

    m.def(
        "parse_definition", [](const std::string& text) { return Definition(cli::parse_definition(text)); },
        py::arg("text"));

    m.def(
        "smith_normal_form",
        [](const std::vector<std::vector<long>>& rows) {
            auto s = smith_normal_form(integer_matrix(rows));
            return py::make_tuple(matrix_rows(s.U), matrix_rows(s.D), matrix_rows(s.V));
        },
        py::arg("matrix"), "U, D, V with U M V = D");
    m.def(
        "cokernel",
        [](const std::vector<std::vector<long>>& rows) {
            auto c = cokernel(integer_matrix(rows));
            py::list tors;
            for (const auto& d : c.torsion) tors.append(to_py(d));
            return py::make_tuple(c.free_rank, tors);
        },
        py::arg("matrix"), "(free rank, invariant factors > 1) of Z^rows / image");

    m.def(
        "run",
        [](const std::string& command, const std::string& file, const std::string& algebra, int smax, int nmax,
           const std::string& window, const std::string& format, const std::string& flavor, const std::string& check,
           const std::string& cache_dir) -> py::tuple {
            cli::Options o;
            o.command = command;
            o.file = file;
            o.algebra = algebra;
            o.smax = smax;
            o.nmax = nmax;
            o.format = format;
            o.flavor = flavor;
            o.check = check;
            o.cache_dir = cache_dir;
            try {
                std::tie(o.lo, o.hi) = cli::parse_window(window);
            } catch (const InputError& e) {
                return py::make_tuple(int(cli::kInputError), std::string(), std::string(e.what()) + "\n");
            }
            auto r = cli::run(o);
            return py::make_tuple(r.code, r.out, r.err);
        },
        py::arg("command"), py::arg("file"), py::arg("algebra") = "", py::arg("smax") = 8, py::arg("nmax") = 4,
        py::arg("window") = "-16:16", py::arg("format") = "tsv", py::arg("flavor") = "classical",
        py::arg("check") = "completion", py::arg("cache_dir") = "",
        "Runs one CLI subcommand; returns (exit code, stdout, stderr).");
}
