#include "fixtures.hpp"

#include "sbc/textio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sbc::support
{

std::string data_path(const std::string & name)
{
  return std::string(SBC_TEST_DATA_DIR) + "/" + name;
}

std::string read_text(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SystemItg load_model(const std::string & name)
{
  auto result = parse_model(read_text(data_path(name)));
  if (!result.ok()) {
    std::string msg = name + ":";
    for (const auto & d : result.diagnostics) msg += " " + format_diagnostic(d);
    throw std::runtime_error(msg);
  }
  return std::move(*result.system);
}

const std::vector<std::vector<std::string>> & oss_table()
{
  static const std::vector<std::vector<std::string>> rows{
    {"ITG_1", "s11", "CAL", "Customer", "Request_Order_from_Customer", "in Request_Order_Info", ":Customer_UI", "s12"},
    {"ITG_1", "s12", "CAL", ":Customer_UI", "Request_Order_from_UI", "in Request_Order_Info", ":Customer_Coordinator", "s13"},
    {"ITG_1", "s13", "CAL", ":Customer_Coordinator", "Authorize_Credit_Card_Charge",
     "in Credit_Card_Id; in Amount; out Authorization_Response", ":Credit_Card_Service", "s14"},
    {"ITG_1", "s14", "CAL", ":Customer_Coordinator", "Store_Order", "in Order; out Order_Id", ":Delivery_Order_Service", "s15"},
    {"ITG_1", "s15", "RET", ":Customer_UI", "Request_Order_from_UI", "out Order_Info", ":Customer_Coordinator", "s16"},
    {"ITG_1", "s16", "RET", "Customer", "Request_Order_from_Customer", "out Order_Info", ":Customer_UI", "s11"},
    {"ITG_2", "s21", "CAL", "Supplier", "Shipping", "in Order_Id", ":Supplier_UI", "s22"},
    {"ITG_2", "s22", "CAL", ":Supplier_UI", "Ready_for_Shippment", "in Order_Id", ":Supplier_Coordinator", "s23"},
    {"ITG_2", "s23", "CAL", ":Supplier_Coordinator", "Request_Invoice", "in Order_Id; out Invoice", ":Delivery_Order_Service", "s24"},
    {"ITG_2", "s24", "CAL", ":Supplier_Coordinator", "Commit_Credit_Card_Charge",
     "in Credit_Card_Id; in Amount; out Commit_Response", ":Credit_Card_Service", "s25"},
    {"ITG_2", "s25", "CAL", ":Supplier_Coordinator", "Confirm_Payment", "in Credit_Order_Id; in Amount; out Order_Status",
     ":Delivery_Order_Service", "s26"},
    {"ITG_2", "s26", "RET", ":Supplier_UI", "Ready_for_Shippment", "out Order_Status", ":Supplier_Coordinator", "s27"},
    {"ITG_2", "s27", "RET", "Supplier", "Shipping", "out Order_Status", ":Supplier_UI", "s21"},
    {"ITG_3", "s31", "CAL", "Customer", "Request_Order_Status_from_Customer", "in Order_Id", ":Customer_UI", "s32"},
    {"ITG_3", "s32", "CAL", ":Customer_UI", "Request_Order_Status_from_UI", "in Order_Id", ":Customer_Coordinator", "s33"},
    {"ITG_3", "s33", "CAL", ":Customer_Coordinator", "Read_Order", "in Order_Id; out Order", ":Delivery_Order_Service", "s34"},
    {"ITG_3", "s34", "RET", ":Customer_UI", "Request_Order_Status_from_UI", "out Order_Status", ":Customer_Coordinator", "s35"},
    {"ITG_3", "s35", "RET", "Customer", "Request_Order_Status_from_Customer", "out Order_Status", ":Customer_UI", "s31"},
  };
  return rows;
}

const std::vector<std::vector<std::string>> & printed_class_table()
{
  static const std::vector<std::vector<std::string>> rows{
    {":Customer_UI", "Request_Order_from_Customer", "in Request_Order_Info; out Order_Info"},
    {":Customer_UI", "Request_Order_Status_from_Customer", "in Order_Id; out Order_Status"},
    {":Supplier_UI", "Shipping", "in Order_Id; out Order_Status"},
    {":Customer_Coordinator", "Request_Order_from_UI", "in Request_Order_Info; out Order_Info"},
    {":Customer_Coordinator", "Request_Order_Status_from_UI", "in Order_Id; out Order_Status"},
    {":Supplier_Coordinator", "Ready_for_Shipment", "in Order_Id"},
    {":Credit_Card_Service", "Authorize_Credit_Card_Charge", "in Credit_Card_Id; in Amount; out Authorization_Response"},
    {":Credit_Card_Service", "Commit_Credit_Card_Charge", "in Credit_Card_Id; in Amount; out Commit_Response"},
    {":Delivery_Order_Service", "Store_Order", "in Order; out Order_Id"},
    {":Delivery_Order_Service", "Request_Invoice", "in Order_Id; out Invoice"},
    {":Delivery_Order_Service", "Confirm_Payment", "in Credit_Order_Id; in Amount; out Order_Status"},
    {":Delivery_Order_Service", "Read_Order", "in Order_Id; out Order"},
  };
  return rows;
}

}  // namespace sbc::support
