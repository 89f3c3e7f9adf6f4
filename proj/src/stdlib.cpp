#include "qisxml/stdlib.hpp"

#include "qisxml/xml_io.hpp"

namespace qisxml {

namespace {

constexpr std::string_view kGates = R"xml(<?xml version="1.0" encoding="UTF-8"?>
<g:GateLibrary xmlns:g="qis:gate:1_0" xmlns:r="qis:reusable:1_0">
	<r:Identification>
		<r:ID>stdlib</r:ID>
	</r:Identification>
	<g:Gate>
		<r:Identification>
			<r:ID>H</r:ID>
		</r:Identification>
		<g:Name>Hadamard</g:Name>
		<g:Transformation size="1">
			<g:Multiplier r="0.7071067811865476">
				<r:Symbolic syntax="odf">1/sqrt(2)</r:Symbolic>
				<r:Symbolic syntax="html">1/sqrt(2)</r:Symbolic>
			</g:Multiplier>
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="1" col="2" r="1"/>
			<g:Cell row="2" col="1" r="1"/>
			<g:Cell row="2" col="2" r="-1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>I</r:ID>
		</r:Identification>
		<g:Name>Identity</g:Name>
		<g:Transformation size="1">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>X</r:ID>
		</r:Identification>
		<g:Name>Pauli-X</g:Name>
		<g:Nickname>NOT</g:Nickname>
		<g:Transformation size="1">
			<g:Cell row="1" col="2" r="1"/>
			<g:Cell row="2" col="1" r="1"/>
		</g:Transformation>
		<g:Render glyph="oplus"/>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>Y</r:ID>
		</r:Identification>
		<g:Name>Pauli-Y</g:Name>
		<g:Transformation size="1">
			<g:Cell row="1" col="2" i="-1"/>
			<g:Cell row="2" col="1" i="1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>Z</r:ID>
		</r:Identification>
		<g:Name>Pauli-Z</g:Name>
		<g:Transformation size="1">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="-1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>S</r:ID>
		</r:Identification>
		<g:Name>Phase</g:Name>
		<g:Transformation size="1">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" i="1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>SHIFT</r:ID>
		</r:Identification>
		<g:Name>Phase Shift</g:Name>
		<g:Parameter>
			<g:Name>theta</g:Name>
		</g:Parameter>
		<g:Transformation size="1">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2">
				<r:Symbolic syntax="html">e^(2πiθ)</r:Symbolic>
			</g:Cell>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>SQRT-NOT</r:ID>
		</r:Identification>
		<g:Name>Square Root of Not</g:Name>
		<g:Transformation size="1">
			<g:Multiplier r="0.5">
				<r:Symbolic syntax="html">1/2</r:Symbolic>
			</g:Multiplier>
			<g:Cell row="1" col="1" r="1" i="1"/>
			<g:Cell row="1" col="2" r="1" i="-1"/>
			<g:Cell row="2" col="1" r="1" i="-1"/>
			<g:Cell row="2" col="2" r="1" i="1"/>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>T</r:ID>
		</r:Identification>
		<g:Name>π/8</g:Name>
		<g:Transformation size="1">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="0.7071067811865476" i="0.7071067811865476">
				<r:Symbolic syntax="html">e^(iπ/4)</r:Symbolic>
			</g:Cell>
		</g:Transformation>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>C-NOT</r:ID>
		</r:Identification>
		<g:Name>Controlled-NOT</g:Name>
		<g:Nickname>C-NOT</g:Nickname>
		<g:Transformation size="2">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="4" r="1"/>
			<g:Cell row="4" col="3" r="1"/>
		</g:Transformation>
		<g:Render glyph="oplus">
			<g:Control input="1"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>C-T</r:ID>
		</r:Identification>
		<g:Name>Controlled π/8</g:Name>
		<g:Transformation size="2">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" r="0.7071067811865476" i="0.7071067811865476"/>
		</g:Transformation>
		<g:Render glyph="box" label="T">
			<g:Control input="1"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>C-S</r:ID>
		</r:Identification>
		<g:Name>Controlled Phase</g:Name>
		<g:Transformation size="2">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" i="1"/>
		</g:Transformation>
		<g:Render glyph="box" label="S">
			<g:Control input="1"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>C-Z</r:ID>
		</r:Identification>
		<g:Name>Controlled-Z</g:Name>
		<g:Transformation size="2">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" r="-1"/>
		</g:Transformation>
		<g:Render glyph="dot">
			<g:Control input="1"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>DEUTSCH</r:ID>
		</r:Identification>
		<g:Name>Deutsch Gate</g:Name>
		<g:Description>The Deutsch gate is a quantum gate, which is based on the idea of a Toffoli gate. It is a 3 input gate where the two top inputs control the action of the bottom line. But this time the action is not a toggle. Instead it is a spin rotation by angle θ about the x axis.</g:Description>
		<g:Parameter>
			<g:Name>theta</g:Name>
		</g:Parameter>
		<g:Transformation size="3">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" r="1"/>
			<g:Cell row="5" col="5" r="1"/>
			<g:Cell row="6" col="6" r="1"/>
			<g:Cell row="7" col="7">
				<r:Symbolic syntax="html">cos(θ)</r:Symbolic>
			</g:Cell>
			<g:Cell row="7" col="8">
				<r:Symbolic syntax="html">i sin(θ)</r:Symbolic>
			</g:Cell>
			<g:Cell row="8" col="7">
				<r:Symbolic syntax="html">i sin(θ)</r:Symbolic>
			</g:Cell>
			<g:Cell row="8" col="8">
				<r:Symbolic syntax="html">cos(θ)</r:Symbolic>
			</g:Cell>
		</g:Transformation>
		<g:Render glyph="box" label="R(θ)">
			<g:Control input="1"/>
			<g:Control input="2"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>FREDKIN</r:ID>
		</r:Identification>
		<g:Name>Fredkin</g:Name>
		<g:Nickname>Controlled Swap</g:Nickname>
		<g:Transformation size="3">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" r="1"/>
			<g:Cell row="5" col="5" r="1"/>
			<g:Cell row="6" col="7" r="1"/>
			<g:Cell row="7" col="6" r="1"/>
			<g:Cell row="8" col="8" r="1"/>
		</g:Transformation>
		<g:Render glyph="swap">
			<g:Control input="1"/>
		</g:Render>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>SWAP</r:ID>
		</r:Identification>
		<g:Name>Swap</g:Name>
		<g:Transformation size="2">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="3" r="1"/>
			<g:Cell row="3" col="2" r="1"/>
			<g:Cell row="4" col="4" r="1"/>
		</g:Transformation>
		<g:Render glyph="swap"/>
	</g:Gate>
	<g:Gate>
		<r:Identification>
			<r:ID>TOFFOLI</r:ID>
		</r:Identification>
		<g:Name>Toffoli</g:Name>
		<g:Transformation size="3">
			<g:Cell row="1" col="1" r="1"/>
			<g:Cell row="2" col="2" r="1"/>
			<g:Cell row="3" col="3" r="1"/>
			<g:Cell row="4" col="4" r="1"/>
			<g:Cell row="5" col="5" r="1"/>
			<g:Cell row="6" col="6" r="1"/>
			<g:Cell row="7" col="8" r="1"/>
			<g:Cell row="8" col="7" r="1"/>
		</g:Transformation>
		<g:Render glyph="oplus">
			<g:Control input="1"/>
			<g:Control input="2"/>
		</g:Render>
	</g:Gate>
</g:GateLibrary>
)xml";

constexpr std::string_view kCircuits = R"xml(<?xml version="1.0" encoding="UTF-8"?>
<c:CircuitLibrary xmlns:c="qis:circuit:1_0" xmlns:g="qis:gate:1_0" xmlns:r="qis:reusable:1_0">
	<r:Identification>
		<r:ID>stdlib-circuits</r:ID>
	</r:Identification>
	<c:Circuit size="1">
		<r:Identification>
			<r:ID>not_equivalent</r:ID>
		</r:Identification>
		<c:Name>NOT equivalent</c:Name>
		<c:Description>NOT gate equivalent circuit made of two "Square root of not" gates</c:Description>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:GateRef>
					<r:ID>SQRT-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:GateRef>
					<r:ID>SQRT-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
	</c:Circuit>
	<c:Circuit size="3">
		<r:Identification>
			<r:ID>three_qubit_phase_flip</r:ID>
		</r:Identification>
		<c:Name>3-qubit phase flip code</c:Name>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="2" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="3" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
			<c:Operation>
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
	</c:Circuit>
	<c:Circuit size="3">
		<r:Identification>
			<r:ID>toffoli_equivalent</r:ID>
		</r:Identification>
		<c:Name>Toffoli equivalent</c:Name>
		<c:Description>Toffoli gate built from Hadamard, C-NOT and pi/8 gates; reversed pi/8 gates give the conjugates.</c:Description>
		<c:Step>
			<c:Operation>
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:Map qubit="3" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation reverse="true">
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="3" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:Map qubit="3" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation reverse="true">
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="3" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="3" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="2" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation reverse="true">
				<c:Map qubit="2" input="1"/>
				<c:GateRef>
					<r:ID>T</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="2" input="2"/>
				<c:GateRef>
					<r:ID>C-NOT</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
	</c:Circuit>
	<c:Circuit size="2">
		<r:Identification>
			<r:ID>cnot_equivalent</r:ID>
		</r:Identification>
		<c:Name>C-NOT equivalent</c:Name>
		<c:Description>C-NOT from a Controlled-Z conjugated by Hadamard gates on the target.</c:Description>
		<c:Step>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="1" input="1"/>
				<c:Map qubit="2" input="2"/>
				<c:GateRef>
					<r:ID>C-Z</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
		<c:Step>
			<c:Operation>
				<c:Map qubit="2" input="1"/>
				<c:GateRef>
					<r:ID>H</r:ID>
				</c:GateRef>
			</c:Operation>
		</c:Step>
	</c:Circuit>
</c:CircuitLibrary>
)xml";

}  // namespace

std::string_view builtin_gates_xml() { return kGates; }
std::string_view builtin_circuits_xml() { return kCircuits; }

const GateLibrary& builtin_gates() {
    static const GateLibrary library = std::get<GateLibrary>(parse_document(kGates, std::string(kBuiltinGatesUri)));
    return library;
}

const CircuitLibrary& builtin_circuits() {
    static const CircuitLibrary library =
        std::get<CircuitLibrary>(parse_document(kCircuits, std::string(kBuiltinCircuitsUri)));
    return library;
}

void add_builtins(DocumentSet& set) {
    set.add(builtin_gates(), std::string(kBuiltinGatesUri), true);
    set.add(builtin_circuits(), std::string(kBuiltinCircuitsUri), true);
}

}  // namespace qisxml
